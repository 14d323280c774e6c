#include "genuslab/biquadratic.hpp"
#include "genuslab/errors.hpp"
#include "genuslab/quadratic.hpp"

#include <doctest.h>

#include <numeric>

using namespace genuslab;

namespace {

ErrorKind kind_of(auto && f)
{
    try {
        f();
    } catch (Error const & e) {
        return e.kind();
    }
    return ErrorKind::InternalInconsistency;
}

bool odd_squarefree(std::int64_t n)
{
    if (n % 2 == 0)
        return false;
    for (std::int64_t p = 3; p * p <= n; p += 2)
        if (n % (p * p) == 0)
            return false;
    return true;
}

int omega_of(std::uint64_t n)
{
    int w = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ++w;
            while (n % p == 0)
                n /= p;
        }
    return w + (n > 1 ? 1 : 0);
}

} // namespace

TEST_CASE("from_radicands validation")
{
    CHECK(kind_of([] { BiquadraticField::from_radicands(4, 7); }) == ErrorKind::NotSquarefree);
    CHECK(kind_of([] { BiquadraticField::from_radicands(2, 7); }) == ErrorKind::EvenRadicand);
    CHECK(kind_of([] { BiquadraticField::from_radicands(1, 7); }) == ErrorKind::DegenerateRadicand);
    CHECK(kind_of([] { BiquadraticField::from_radicands(-3, 7); }) == ErrorKind::NotTotallyReal);
    CHECK(kind_of([] { BiquadraticField::from_radicands(7, 7); }) == ErrorKind::DegenerateField);
    CHECK(kind_of([] { BiquadraticField::from_triple(1, 1, 7); }) == ErrorKind::DegenerateField);
    CHECK(kind_of([] { BiquadraticField::from_triple(3, 15, 7); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { BiquadraticField::from_triple(3, 9, 7); }) == ErrorKind::NotSquarefree);
    CHECK(kind_of([] { BiquadraticField::from_triple(3, 2, 7); }) == ErrorKind::EvenRadicand);
    CHECK(kind_of([] { BiquadraticField::from_radicands(3037000493, 3037000453); }) == ErrorKind::Overflow);
}

TEST_CASE("canonical triple and identification")
{
    auto const K = BiquadraticField::from_radicands(21, 33);
    CHECK(K.triple() == std::array<std::uint64_t, 3>{3, 7, 11});
    CHECK(K.shared_prime());
    CHECK(K == BiquadraticField::from_radicands(21, 77));
    CHECK(K == BiquadraticField::from_radicands(77, 33));
    CHECK(K == BiquadraticField::from_triple(11, 3, 7));
    CHECK(K.subfield_radicands() == std::array<std::int64_t, 3>{21, 33, 77});
    CHECK_FALSE(BiquadraticField::from_radicands(5, 209).shared_prime());
}

TEST_CASE("discriminant_of examples")
{
    auto const K35 = BiquadraticField::from_radicands(3, 5);
    CHECK(K35.c() == 4);
    CHECK(discriminant_of(K35) == 3600);
    CHECK(K35.omega() == 3);
    auto const K513 = BiquadraticField::from_radicands(5, 13);
    CHECK(K513.c() == 1);
    CHECK(discriminant_of(K513) == 4225);
    CHECK(discriminant_of(BiquadraticField::from_radicands(3, 7)) == 7056);
    CHECK(discriminant_of(BiquadraticField::from_radicands(5, 209)) == 1092025);
}

TEST_CASE("conductor-discriminant identity over many fields")
{
    for (std::int64_t a = 3; a < 120; a += 2) {
        if (!odd_squarefree(a))
            continue;
        for (std::int64_t b = a + 2; b < 120; b += 2) {
            if (!odd_squarefree(b))
                continue;
            auto const K = BiquadraticField::from_radicands(a, b);
            unsigned __int128 prod = 1;
            std::uint64_t all = 1;
            for (std::int64_t s : K.subfield_radicands()) {
                prod *= static_cast<unsigned __int128>(s % 4 == 1 ? s : 4 * s);
                all = std::lcm(all, static_cast<std::uint64_t>(s % 4 == 1 ? s : 4 * s));
            }
            REQUIRE(static_cast<unsigned __int128>(K.discriminant()) == prod);
            REQUIRE(K.omega() == omega_of(all));
            REQUIRE(genus_number(K) == (std::uint64_t{1} << (K.omega() - 2)));
        }
    }
}

TEST_CASE("genus field examples")
{
    auto const K = BiquadraticField::from_radicands(3, 7);
    CHECK(genus_field(K).generators() == std::vector<std::int64_t>{-3, -7, -1});
    CHECK(genus_number(K) == 2);
    CHECK(real_genus_subfield(K) == MultiquadraticField({3, 7}));
    CHECK(real_genus_degree_over_k(K) == 1);

    auto const K2 = BiquadraticField::from_radicands(5, 209);
    CHECK(genus_field(K2).generators() == std::vector<std::int64_t>{5, -11, -19});
    CHECK(genus_number(K2) == 2);
    CHECK(real_genus_subfield(K2) == MultiquadraticField({5, 209}));

    auto const K3 = BiquadraticField::from_radicands(21, 209);
    CHECK(genus_number(K3) == 4);
    CHECK(real_genus_subfield(K3) == MultiquadraticField({21, 33, 57}));
    CHECK(real_genus_degree_over_k(K3) == 2);

    // every prime = 1 (mod 4): the genus field is already totally real
    auto const K4 = BiquadraticField::from_radicands(5 * 13, 17);
    CHECK(genus_field(K4).totally_real());
    CHECK(real_genus_degree_over_k(K4) == genus_number(K4));
}

TEST_CASE("genus field properties")
{
    for (std::int64_t a = 3; a < 150; a += 2) {
        if (!odd_squarefree(a))
            continue;
        for (std::int64_t b = a + 2; b < 150; b += 2) {
            if (!odd_squarefree(b))
                continue;
            auto const K = BiquadraticField::from_radicands(a, b);
            auto const G = genus_field(K);
            auto const L = real_genus_subfield(K);
            REQUIRE(G.contains(a));
            REQUIRE(G.contains(b));
            REQUIRE(L.contains(a));
            REQUIRE(L.contains(b));
            REQUIRE(G.contains(L));
            REQUIRE(L.totally_real());
            REQUIRE((L.degree() == G.degree() || 2 * L.degree() == G.degree()));
            REQUIRE(G.degree() == 4 * genus_number(K));
        }
    }
}

TEST_CASE("classify_form")
{
    CHECK(classify_form(BiquadraticField::from_radicands(5, 13)) == FieldForm::TwoPrimes);
    CHECK(classify_form(BiquadraticField::from_radicands(5, 209)) == FieldForm::PrimeTimesPair);
    CHECK(classify_form(BiquadraticField::from_radicands(15, 21)) == FieldForm::SharedPrime);
    CHECK(classify_form(BiquadraticField::from_radicands(21, 65)) == FieldForm::TwoTimesTwo);
    CHECK(classify_form(BiquadraticField::from_radicands(105, 13)) == FieldForm::ThreeTimesOne);
    // the same shapes with c = 4 have five ramified primes
    CHECK(classify_form(BiquadraticField::from_radicands(15, 77)) == FieldForm::None);
    CHECK(classify_form(BiquadraticField::from_radicands(105, 11)) == FieldForm::None);
    // counts {2,3,3}
    CHECK(classify_form(BiquadraticField::from_radicands(3 * 5, 3 * 7 * 11)) == FieldForm::None);
    CHECK(classify_form(BiquadraticField::from_radicands(3 * 5 * 7 * 11, 13)) == FieldForm::None);
    CHECK(to_string(FieldForm::SharedPrime) == "SharedPrime");
}
