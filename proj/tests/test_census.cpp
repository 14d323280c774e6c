#include "genuslab/census.hpp"
#include "genuslab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

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

std::vector<std::uint64_t> distinct_primes(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

bool squarefree(std::uint64_t n)
{
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return true;
}

std::uint64_t quad_disc(std::uint64_t m) { return m % 4 == 1 ? m : 4 * m; }

struct BruteCensus {
    std::uint64_t total = 0;
    std::map<int, std::uint64_t> by_omega;
    std::map<int, std::map<int, std::uint64_t>> by_decade;
};

// Pairs of odd squarefree radicands a < b, each field kept once through its
// sorted subfield radicands; the discriminant is the product of the three
// quadratic discriminants.
BruteCensus brute_census(std::uint64_t X)
{
    auto const root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(X))) + 1;
    std::vector<std::uint64_t> radicands;
    for (std::uint64_t m = 3; m <= root; m += 2)
        if (squarefree(m))
            radicands.push_back(m);
    std::set<std::array<std::uint64_t, 3>> seen;
    BruteCensus out;
    for (std::size_t i = 0; i < radicands.size(); ++i)
        for (std::size_t j = i + 1; j < radicands.size(); ++j) {
            std::uint64_t const a = radicands[i], b = radicands[j], g = std::gcd(a, b);
            std::uint64_t const c = (a / g) * (b / g);
            // the discriminant is at least (abc/g^2)^2 >= c^2, and b <= abc/g^2
            if (c > root)
                continue;
            unsigned __int128 const D = static_cast<unsigned __int128>(quad_disc(a)) * quad_disc(b) * quad_disc(c);
            if (D > X)
                continue;
            std::array<std::uint64_t, 3> key{a, b, c};
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second)
                continue;
            auto const d = static_cast<std::uint64_t>(D);
            int const w = static_cast<int>(distinct_primes(d).size());
            int decade = 0;
            for (std::uint64_t t = d; t >= 10; t /= 10)
                ++decade;
            ++out.total;
            ++out.by_omega[w];
            ++out.by_decade[decade][w];
        }
    return out;
}

std::filesystem::path temp_file(std::string const & name)
{
    auto const dir = std::filesystem::temp_directory_path() / "genuslab_tests";
    std::filesystem::create_directories(dir);
    auto const p = dir / name;
    std::filesystem::remove(p);
    return p;
}

} // namespace

TEST_CASE("count_S small values")
{
    CHECK(count_S(3599).total == 0);
    CHECK(count_S(3600).total == 1);
    CHECK(count_S(4225).total == 2);
    CHECK(count_S_by_genus(4225, 0) == 1);
    CHECK(count_S_by_genus(4225, 1) == 1);
    CHECK(count_S_by_genus(4225, 2) == 0);
    CHECK(kind_of([] { count_S(0); }) == ErrorKind::NonPositive);
    CHECK(kind_of([] { count_S_by_genus(4225, -1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("count_S against the pair enumeration oracle")
{
    for (std::uint64_t X : {3600ULL, 10'000ULL, 123'457ULL, 1'000'000ULL, 4'000'000ULL, 10'000'000ULL}) {
        INFO("X = ", X);
        auto const brute = brute_census(X);
        auto const r = count_S(X);
        CHECK(r.total == brute.total);
        CHECK(r.by_omega == brute.by_omega);
        CHECK(r.by_decade == brute.by_decade);
        // every field below the check limit was rebuilt and verified
        CHECK(r.checked_fields == r.total);

        std::uint64_t sum = 0, eligible = 0;
        for (auto const & [w, c] : r.by_omega) {
            sum += c;
            if (w <= 4)
                eligible += c;
            CHECK(r.by_genus.at(std::uint64_t{1} << (w - 2)) == c);
        }
        CHECK(sum == r.total);
        CHECK(eligible == r.euclid_eligible);

        std::uint64_t visited = 0;
        for_each_field(X, [&](FieldTriple const & t) {
            ++visited;
            REQUIRE(t.m[0] < t.m[1]);
            REQUIRE(t.m[1] < t.m[2]);
            REQUIRE(t.discriminant <= X);
        });
        CHECK(visited == r.total);
    }
}

TEST_CASE("sampled checks above the limit agree with full checks")
{
    CensusOptions sampled;
    sampled.check_limit = 10'000;
    auto const a = count_S(2'000'000, sampled);
    auto const b = count_S(2'000'000);
    CHECK(a.total == b.total);
    CHECK(a.by_omega == b.by_omega);
    CHECK(a.checked_fields < b.checked_fields);
}

TEST_CASE("deterministic across thread counts")
{
    CensusOptions one, four;
    four.threads = 4;
    auto const a = count_S(50'000'000, one);
    auto const b = count_S(50'000'000, four);
    CHECK(a.same_counts(b));
    four.threads = 7;
    CHECK(count_S(50'000'000, four).same_counts(a));
}

TEST_CASE("checkpoint resume")
{
    auto const file = temp_file("census.ckpt");
    CensusOptions opts;
    opts.checkpoint = file;
    auto const first = count_S(20'000'000, opts);
    REQUIRE(std::filesystem::exists(file));
    std::string line;
    std::getline(std::ifstream(file), line);
    CHECK(line.find("X=20000000") != std::string::npos);

    // a finished checkpoint resumes to the same report
    CHECK(count_S(20'000'000, opts).same_counts(first));

    // one for a different bound is ignored
    auto const other = count_S(5'000'000, opts);
    CHECK(other.same_counts(count_S(5'000'000)));

    // a partial state: the first batch only, then the rest
    std::ofstream(file, std::ios::trunc) << "X=20000000 next=1 total=0 eligible=0 checked=0\n";
    CHECK(count_S(20'000'000, opts).same_counts(first));

    std::ofstream(file, std::ios::trunc) << "X=20000000 next=oops\n";
    CHECK(kind_of([&] { count_S(20'000'000, opts); }) == ErrorKind::CacheError);
}

TEST_CASE("count_for_modulus matches direct slot assignment")
{
    for (std::uint64_t M = 3; M < 20'000; M += 2) {
        if (!squarefree(M))
            continue;
        auto const primes = distinct_primes(M);
        std::size_t const n = primes.size();
        std::uint64_t congruent = 0, mixed = 0;
        std::uint64_t assignments = 1;
        for (std::size_t i = 0; i < n; ++i)
            assignments *= 3;
        for (std::uint64_t code = 0; code < assignments; ++code) {
            std::array<std::uint64_t, 3> m{1, 1, 1};
            std::uint64_t c = code;
            for (std::size_t i = 0; i < n; ++i, c /= 3)
                m[c % 3] *= primes[i];
            if (std::count(m.begin(), m.end(), 1ULL) >= 2)
                continue;
            if (m[0] % 4 == m[1] % 4 && m[1] % 4 == m[2] % 4)
                ++congruent;
            else
                ++mixed;
        }
        auto const r = count_for_modulus(M, primes);
        REQUIRE(r.congruent * 6 == congruent);
        REQUIRE(r.mixed * 6 == mixed);
    }
}

TEST_CASE("ordered_factorization_check")
{
    CHECK(ordered_factorization_check(1) == 1);
    CHECK(ordered_factorization_check(15) == 9);
    CHECK(ordered_factorization_check(105) == 27);
    CHECK(kind_of([] { ordered_factorization_check(12); }) == ErrorKind::NotSquarefree);
}

TEST_CASE("sathe_selberg_count against a direct factorization scan")
{
    CHECK(sathe_selberg_count(100, 1).exact == 25);
    CHECK(sathe_selberg_count(100, 2).exact == 30);

    std::uint64_t const N = 100'000;
    std::map<int, std::uint64_t> direct;
    for (std::uint64_t m = 1; m <= N; ++m)
        if (squarefree(m))
            ++direct[static_cast<int>(distinct_primes(m).size())];
    auto const counts = squarefree_omega_counts(N);
    for (auto const & [n, c] : direct)
        CHECK(counts.at(static_cast<std::size_t>(n)) == c);
    for (int n = 1; n <= 5; ++n) {
        auto const row = sathe_selberg_count(N, n);
        CHECK(row.exact == direct[n]);
        CHECK(row.ratio == doctest::Approx(static_cast<double>(row.exact) / row.main_term));
    }
}

TEST_CASE("euler_constant")
{
    auto const e3 = euler_constant(3);
    CHECK(e3.truncated_product == doctest::Approx(16.0 / 27.0).epsilon(1e-15));
    CHECK(e3.truncated_product_all == doctest::Approx(5.0 / 27.0).epsilon(1e-15));

    auto const e = euler_constant(1000), e2 = euler_constant(2000);
    CHECK(e2.truncated_product <= e.truncated_product);
    CHECK(e.truncated_product - e2.truncated_product < e.tail_bound);
    CHECK(e.tail_bound == doctest::Approx(6.0 / 1000.0));

    REQUIRE(e.candidate_A.size() == 4);
    CHECK(e.candidate_A[0].label == "7/1920*prod_all_p");
    CHECK(e.candidate_A[1].label == "7/768*prod_odd_p");
    // same product, the two rational prefactors
    CHECK(static_cast<double>(e.candidate_A[3].value / e.candidate_A[0].value) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(static_cast<double>(e.candidate_A[1].value / e.candidate_A[2].value) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("coefficient experiment on a small grid")
{
    auto const ex = coefficient_experiment({1'000'000, 10'000'000, 100'000'000}, {}, 10'000);
    REQUIRE(ex.rows.size() == 3);
    for (auto const & r : ex.rows) {
        CHECK(r.ratio > 0);
        CHECK(r.relative.size() == 4);
    }
    CHECK(ex.rows[2].S == count_S(100'000'000).total);
    CHECK(ex.fitted_leading.has_value());
    CHECK((ex.trend_toward == "7/1920*prod_all_p" || ex.trend_toward == "7/768*prod_odd_p"));
    CHECK((ex.trend_direction == "increasing" || ex.trend_direction == "decreasing" || ex.trend_direction == "flat"));
    CHECK(kind_of([] { coefficient_experiment({10'000, 5'000}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("density_report")
{
    ClassNumberCache cache;
    auto const d = density_report(100'000'000, {}, 1'000'000, &cache);
    REQUIRE_FALSE(d.decades.empty());
    for (auto const & row : d.decades) {
        std::uint64_t sum = 0;
        for (auto const & [w, c] : row.by_omega)
            sum += c;
        CHECK(sum == row.total);
        CHECK(row.eligible <= row.total);
    }
    auto const & top = d.decades.back();
    auto const six = std::find_if(d.decades.begin(), d.decades.end(), [](DecadeRow const & r) { return r.decade == 6; });
    REQUIRE(six != d.decades.end());
    CHECK(top.eligible_fraction <= six->eligible_fraction);
    REQUIRE(d.verdicts.has_value());
    CHECK(d.verdicts->fields == 113);
    std::uint64_t tallied = 0;
    for (auto const & [status, c] : d.verdicts->by_status)
        tallied += c;
    CHECK(tallied == 113);
}
