#include "genuslab/brauer.hpp"
#include "genuslab/census.hpp"
#include "genuslab/errors.hpp"
#include "genuslab/euclid.hpp"

#include <doctest.h>

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

} // namespace

TEST_CASE("hilbert_abelian")
{
    ClassNumberCache cache;
    CHECK_FALSE(hilbert_abelian(BiquadraticField::from_radicands(5, 209), cache));
    CHECK(hilbert_abelian(BiquadraticField::from_radicands(5, 13), cache));
    auto const K = BiquadraticField::from_radicands(3, 7);
    CHECK(real_genus_degree_over_k(K) == 1);
    CHECK(hilbert_abelian(K, cache) == (class_number_biquadratic(K, cache) == 1));
}

TEST_CASE("exceptional_pattern")
{
    CHECK(exceptional_pattern(BiquadraticField::from_radicands(5, 209)));
    CHECK_FALSE(exceptional_pattern(BiquadraticField::from_radicands(13, 85)));
    CHECK_FALSE(exceptional_pattern(BiquadraticField::from_radicands(3, 35)));
    // the prime radicand may be given second or hidden as a product
    CHECK(exceptional_pattern(BiquadraticField::from_radicands(209, 5)));
    CHECK(exceptional_pattern(BiquadraticField::from_radicands(1045, 209)));
    CHECK(kind_of([] { exceptional_pattern(BiquadraticField::from_radicands(5, 13)); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("euclidean_verdict examples")
{
    ClassNumberCache cache;
    auto const v = euclidean_verdict(BiquadraticField::from_radicands(5, 209), cache);
    CHECK(v.status == VerdictStatus::OutsideTheorem);
    CHECK(v.exceptional_pattern == std::optional<bool>(true));
    CHECK(v.hilbert_abelian == std::optional<bool>(false));
    CHECK(v.h_K == std::optional<std::int64_t>(2));
    CHECK(v.reasons == std::vector<std::string>{"hilbert_nonabelian", "d8_obstruction"});

    auto const big = euclidean_verdict(BiquadraticField::from_radicands(3 * 5 * 7 * 11, 13), cache);
    CHECK(big.status == VerdictStatus::NoNonCyclic);
    CHECK(big.omega >= 5);
    CHECK(big.reasons == std::vector<std::string>{"omega_gt_4"});
    CHECK_FALSE(big.h_K.has_value());

    auto const one = euclidean_verdict(BiquadraticField::from_radicands(5, 13), cache);
    CHECK(one.h_K == std::optional<std::int64_t>(1));
    CHECK(one.status == VerdictStatus::Exists);
    CHECK(one.reasons == std::vector<std::string>{"class_number_one"});
}

TEST_CASE("verdict invariants over every field with discriminant up to 10^6")
{
    ClassNumberCache cache;
    std::map<VerdictStatus, int> tally;
    for_each_field(1'000'000, [&](FieldTriple const & t) {
        auto const K = BiquadraticField::from_triple(t.m[0], t.m[1], t.m[2]);
        auto const v = euclidean_verdict(K, cache);
        ++tally[v.status];
        REQUIRE(v.omega == K.omega());
        REQUIRE(v.reasons.size() >= 1);
        switch (v.status) {
        case VerdictStatus::Exists:
            REQUIRE(v.hilbert_abelian == std::optional<bool>(true));
            REQUIRE(v.h_K.value() <= 2);
            REQUIRE(v.omega <= 4);
            break;
        case VerdictStatus::NoNonCyclic:
            REQUIRE((v.omega > 4 || (v.hilbert_abelian == std::optional<bool>(true) && v.h_K.value() > 2)));
            break;
        case VerdictStatus::OutsideTheorem:
            REQUIRE(v.hilbert_abelian == std::optional<bool>(false));
            break;
        }
        if (v.h_K) {
            // the genus subfield L sits inside the Hilbert class field
            REQUIRE(*v.h_K % static_cast<std::int64_t>(real_genus_degree_over_k(K)) == 0);
            REQUIRE(*v.hilbert_abelian == (*v.h_K == static_cast<std::int64_t>(real_genus_degree_over_k(K))));
        }
    });
    CHECK(tally[VerdictStatus::Exists] > 0);
    CHECK(tally[VerdictStatus::OutsideTheorem] > 0);
}

TEST_CASE("reason vocabulary")
{
    CHECK(to_string(VerdictStatus::Exists) == "Exists");
    CHECK(to_string(VerdictStatus::NoNonCyclic) == "NoNonCyclic");
    CHECK(to_string(VerdictStatus::OutsideTheorem) == "OutsideTheorem");
}
