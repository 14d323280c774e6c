#include "genuslab/arith.hpp"
#include "genuslab/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace genuslab;

namespace {

std::vector<std::uint64_t> trial_primes(std::uint64_t n)
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

bool naive_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

// Legendre symbol by Euler's criterion
int euler_legendre(std::int64_t a, std::int64_t p)
{
    std::int64_t const r = mod(a, p);
    if (r == 0)
        return 0;
    std::int64_t result = 1, base = r, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;
}

// Kronecker symbol from its definition through the factorization of n
int kronecker_by_definition(std::int64_t D, std::int64_t n)
{
    int result = 1;
    std::int64_t m = n;
    for (std::int64_t p = 2; p <= m; ++p) {
        while (m % p == 0) {
            m /= p;
            if (p == 2) {
                if (D % 2 == 0)
                    return 0;
                std::int64_t const r = mod(D, 8);
                result *= (r == 1 || r == 7) ? 1 : -1;
            } else {
                result *= euler_legendre(D, p);
            }
        }
    }
    return result;
}

} // namespace

TEST_CASE("factor_squarefree")
{
    auto const f = factor_squarefree(30);
    CHECK(f.value() == 30);
    CHECK(std::vector<std::uint64_t>(f.primes().begin(), f.primes().end()) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(f.omega() == 3);
    CHECK(f.mu() == -1);
    CHECK(factor_squarefree(1).omega() == 0);
    CHECK(factor_squarefree(1).mu() == 1);
    CHECK_THROWS_AS(factor_squarefree(12), Error);
    CHECK_THROWS_AS(factor_squarefree(0), Error);
    try {
        factor_squarefree(12);
    } catch (Error const & e) {
        CHECK(e.kind() == ErrorKind::NotSquarefree);
    }
    try {
        factor_squarefree(-5);
    } catch (Error const & e) {
        CHECK(e.kind() == ErrorKind::NonPositive);
    }
}

TEST_CASE("factor agrees with trial division")
{
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        auto const f = factor(n);
        std::vector<std::uint64_t> ps;
        std::uint64_t back = 1;
        for (auto const & [p, e] : f) {
            ps.push_back(p);
            for (int i = 0; i < e; ++i)
                back *= p;
        }
        REQUIRE(back == n);
        REQUIRE(ps == trial_primes(n));
    }
}

TEST_CASE("factor handles large semiprimes")
{
    std::uint64_t const p = 1000000007ULL, q = 998244353ULL;
    auto const f = factor(p * q);
    REQUIRE(f.size() == 2);
    CHECK(f[0].first == q);
    CHECK(f[1].first == p);
    CHECK(is_squarefree(p * q));
    CHECK_FALSE(is_squarefree(p * p));
}

TEST_CASE("is_prime matches trial division")
{
    for (std::uint64_t n = 0; n < 50000; ++n)
        REQUIRE(is_prime(n) == naive_prime(n));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("kronecker_symbol matches the definition")
{
    for (std::int64_t D = -60; D <= 60; ++D)
        for (std::int64_t n = 1; n <= 200; ++n)
            REQUIRE(kronecker_symbol(D, n) == kronecker_by_definition(D, n));
    CHECK(kronecker_symbol(5, 2) == -1);
    CHECK(kronecker_symbol(-4, 3) == -1);
    CHECK(kronecker_symbol(12, 5) == -1);
}

TEST_CASE("chi4")
{
    CHECK(chi4(1) == 1);
    CHECK(chi4(3) == -1);
    CHECK(chi4(2) == 0);
    CHECK(chi4(-1) == -1);
    CHECK(chi4(5) == 1);
}

TEST_CASE("isqrt and is_perfect_square")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100000; ++i) {
        std::uint64_t const n = rng() >> (rng() % 64);
        std::uint64_t const r = isqrt(n);
        REQUIRE(static_cast<unsigned __int128>(r) * r <= n);
        REQUIRE(static_cast<unsigned __int128>(r + 1) * (r + 1) > n);
    }
    CHECK(isqrt(~std::uint64_t{0}) == 4294967295ULL);
    CHECK(is_perfect_square(0) == std::optional<std::uint64_t>(0));
    CHECK(is_perfect_square(144) == std::optional<std::uint64_t>(12));
    CHECK_FALSE(is_perfect_square(145));
    CHECK(is_perfect_square(4294967295ULL * 4294967295ULL) == std::optional<std::uint64_t>(4294967295ULL));
}

TEST_CASE("primes_up_to")
{
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
    CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_up_to(100).size() == 25);
    CHECK(primes_up_to(1000000).size() == 78498);
    CHECK(small_primes().back() == 999983);
}

TEST_CASE("SpfSieve squarefree_primes")
{
    SpfSieve const sieve(100000);
    std::vector<std::uint32_t> out;
    for (std::uint32_t n = 1; n <= 100000; ++n) {
        out.clear();
        bool const sf = sieve.squarefree_primes(n, out);
        REQUIRE(sf == is_squarefree(n));
        if (sf) {
            std::vector<std::uint64_t> got(out.begin(), out.end());
            std::sort(got.begin(), got.end());
            REQUIRE(got == trial_primes(n));
        }
    }
}
