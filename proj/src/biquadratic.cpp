#include "genuslab/biquadratic.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/errors.hpp"
#include "genuslab/quadratic.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace genuslab {

namespace {

using u128 = unsigned __int128;

void require_odd_real_radicand(std::int64_t a)
{
    if (a < 0)
        fail(ErrorKind::NotTotallyReal, "radicand " + std::to_string(a) + " is negative");
    if (a == 0 || a == 1)
        fail(ErrorKind::DegenerateRadicand, "radicand " + std::to_string(a));
    if (!is_squarefree(static_cast<std::uint64_t>(a)))
        fail(ErrorKind::NotSquarefree, std::to_string(a) + " is not squarefree");
    if (a % 2 == 0)
        fail(ErrorKind::EvenRadicand, std::to_string(a) + " is even");
}

std::uint64_t to_u64(u128 v, char const * what)
{
    if (v > std::numeric_limits<std::uint64_t>::max())
        fail(ErrorKind::Overflow, std::string(what) + " exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

} // namespace

std::string_view to_string(FieldForm form)
{
    switch (form) {
    case FieldForm::TwoPrimes: return "TwoPrimes";
    case FieldForm::PrimeTimesPair: return "PrimeTimesPair";
    case FieldForm::SharedPrime: return "SharedPrime";
    case FieldForm::TwoTimesTwo: return "TwoTimesTwo";
    case FieldForm::ThreeTimesOne: return "ThreeTimesOne";
    case FieldForm::None: return "None";
    }
    return "None";
}

BiquadraticField BiquadraticField::from_radicands(std::int64_t a, std::int64_t b)
{
    require_odd_real_radicand(a);
    require_odd_real_radicand(b);
    if (a == b)
        fail(ErrorKind::DegenerateField, "equal radicands give a quadratic field");
    auto const ua = static_cast<std::uint64_t>(a), ub = static_cast<std::uint64_t>(b);
    std::uint64_t const m = gcd(ua, ub);
    std::array<std::uint64_t, 3> triple{m, ua / m, ub / m};
    std::sort(triple.begin(), triple.end());
    return build(a, b, triple);
}

BiquadraticField BiquadraticField::from_triple(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3)
{
    std::array<std::uint64_t, 3> triple{m1, m2, m3};
    std::sort(triple.begin(), triple.end());
    for (std::uint64_t m : triple) {
        if (m == 0)
            fail(ErrorKind::DegenerateRadicand, "triple entry 0");
        if (m % 2 == 0)
            fail(ErrorKind::EvenRadicand, std::to_string(m) + " is even");
        if (!is_squarefree(m))
            fail(ErrorKind::NotSquarefree, std::to_string(m) + " is not squarefree");
    }
    if (triple[1] == 1)
        fail(ErrorKind::DegenerateField, "triple has two entries equal to 1");
    if (gcd(triple[0], triple[1]) != 1 || gcd(triple[0], triple[2]) != 1 || gcd(triple[1], triple[2]) != 1)
        fail(ErrorKind::InvalidArgument, "triple entries are not pairwise coprime");
    auto const d1 = to_u64(static_cast<u128>(triple[0]) * triple[1], "radicand");
    auto const d2 = to_u64(static_cast<u128>(triple[0]) * triple[2], "radicand");
    if (d1 > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) ||
        d2 > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorKind::Overflow, "radicand exceeds 63 bits");
    return build(static_cast<std::int64_t>(d1), static_cast<std::int64_t>(d2), triple);
}

BiquadraticField BiquadraticField::build(std::int64_t d1, std::int64_t d2, std::array<std::uint64_t, 3> triple)
{
    BiquadraticField K;
    K.d1_ = d1;
    K.d2_ = d2;
    K.triple_ = triple;
    auto const [m1, m2, m3] = triple;
    bool const congruent = (m1 % 4 == m2 % 4) && (m2 % 4 == m3 % 4);
    K.c_ = congruent ? 1 : 4;

    auto const radicand = [](std::uint64_t x, std::uint64_t y) {
        u128 const v = static_cast<u128>(x) * y;
        if (v > static_cast<u128>(std::numeric_limits<std::int64_t>::max()))
            fail(ErrorKind::Overflow, "subfield radicand exceeds 63 bits");
        return static_cast<std::int64_t>(v);
    };
    K.subfields_ = {radicand(m1, m2), radicand(m1, m3), radicand(m2, m3)};
    std::sort(K.subfields_.begin(), K.subfields_.end());

    for (std::uint64_t m : triple) {
        auto const f = factor_squarefree(static_cast<std::int64_t>(m));
        K.primes_.insert(K.primes_.end(), f.primes().begin(), f.primes().end());
    }
    std::sort(K.primes_.begin(), K.primes_.end());

    u128 const product = static_cast<u128>(m1) * m2 * m3;
    if (product > std::numeric_limits<std::uint64_t>::max())
        fail(ErrorKind::Overflow, "discriminant exceeds 64 bits");
    u128 const root = product * static_cast<u128>(K.c_);
    if (root > std::numeric_limits<std::uint64_t>::max() / 2 ||
        root * root > std::numeric_limits<std::uint64_t>::max())
        fail(ErrorKind::Overflow, "discriminant exceeds 64 bits");
    K.discriminant_ = static_cast<std::uint64_t>(root * root);
    discriminant_of(K);
    return K;
}

bool BiquadraticField::shared_prime() const noexcept
{
    return gcd(static_cast<std::uint64_t>(d1_), static_cast<std::uint64_t>(d2_)) > 1;
}

std::uint64_t discriminant_of(BiquadraticField const & K)
{
    auto const [m1, m2, m3] = K.triple();
    u128 const root = static_cast<u128>(m1) * m2 * m3 * static_cast<u128>(K.c());
    u128 const direct = root * root;
    // conductor-discriminant: product of the three subfield discriminants
    u128 conductor = 1;
    for (std::int64_t r : K.subfield_radicands())
        conductor *= static_cast<u128>(discriminant(r));
    if (K.c() == 8)
        fail(ErrorKind::InternalInconsistency, "c = 8 cannot occur for odd radicands");
    if (direct != conductor || direct != K.discriminant())
        fail(ErrorKind::InternalInconsistency,
             "discriminant mismatch for triple (" + std::to_string(m1) + ", " + std::to_string(m2) + ", " +
                 std::to_string(m3) + ")");
    return K.discriminant();
}

MultiquadraticField genus_field(BiquadraticField const & K)
{
    if (K.d1() % 2 == 0 || K.d2() % 2 == 0)
        fail(ErrorKind::EvenRadicand, "genus field formula needs odd radicands");
    std::vector<std::int64_t> gens;
    for (std::uint64_t p : K.odd_primes()) {
        auto const sp = static_cast<std::int64_t>(p);
        gens.push_back(p % 4 == 1 ? sp : -sp);
    }
    bool const both_one = K.d1() % 4 == 1 && K.d2() % 4 == 1;
    if (both_one != (K.c() == 1))
        fail(ErrorKind::InternalInconsistency, "residue branch disagrees with c");
    if (!both_one)
        gens.push_back(-1);
    return MultiquadraticField(std::move(gens));
}

std::uint64_t genus_number(BiquadraticField const & K)
{
    int const omega = K.omega();
    std::uint64_t const g = std::uint64_t{1} << (omega - 2);
    std::uint64_t const degree = genus_field(K).degree();
    if (g * 4 != degree)
        fail(ErrorKind::InternalInconsistency,
             "genus number 2^(omega-2) = " + std::to_string(g) + " but [G(K):Q] = " + std::to_string(degree));
    return g;
}

MultiquadraticField real_genus_subfield(BiquadraticField const & K)
{
    return genus_field(K).real_subfield();
}

std::uint64_t real_genus_degree_over_k(BiquadraticField const & K)
{
    return real_genus_subfield(K).degree() / 4;
}

FieldForm classify_form(BiquadraticField const & K)
{
    if (K.omega() > 4)
        return FieldForm::None;
    std::array<int, 3> counts{};
    for (std::size_t i = 0; i < 3; ++i)
        counts[i] = factor_squarefree(K.subfield_radicands()[i]).omega();
    std::sort(counts.begin(), counts.end());
    using C = std::array<int, 3>;
    if (counts == C{1, 1, 2})
        return FieldForm::TwoPrimes;
    if (counts == C{1, 2, 3})
        return FieldForm::PrimeTimesPair;
    if (counts == C{2, 2, 2})
        return FieldForm::SharedPrime;
    if (counts == C{2, 2, 4})
        return FieldForm::TwoTimesTwo;
    if (counts == C{1, 3, 4})
        return FieldForm::ThreeTimesOne;
    return FieldForm::None;
}

} // namespace genuslab
