#include "genuslab/arith.hpp"

#include "genuslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace genuslab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 trial_bound = 1'000'000;

u64 mulmod(u64 a, u64 b, u64 m) noexcept
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) noexcept
{
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) noexcept
{
    a %= n;
    if (a == 0)
        return false;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return false;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return false;
    }
    return true;
}

u64 pollard_rho(u64 n)
{
    if (n % 2 == 0)
        return 2;
    std::mt19937_64 rng(n);
    for (;;) {
        u64 const c = rng() % (n - 1) + 1;
        u64 x = rng() % n, y = x, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n)
            return d;
    }
}

void factor_cofactor(u64 n, std::vector<u64> & out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 const d = pollard_rho(n);
    factor_cofactor(d, out);
    factor_cofactor(n / d, out);
}

} // namespace

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::DegenerateRadicand: return "DegenerateRadicand";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::PrecisionFailure: return "PrecisionFailure";
    case ErrorKind::OracleBoundExceeded: return "OracleBoundExceeded";
    case ErrorKind::EvenRadicand: return "EvenRadicand";
    case ErrorKind::DegenerateField: return "DegenerateField";
    case ErrorKind::NotTotallyPositive: return "NotTotallyPositive";
    case ErrorKind::NotTotallyReal: return "NotTotallyReal";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::CacheError: return "CacheError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    }
    return "Unknown";
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Base set proven sufficient for n < 2^64.
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        if (miller_rabin_witness(n, a, d, s))
            return false;
    }
    return true;
}

std::uint64_t gcd(u64 a, u64 b) noexcept
{
    return std::gcd(a, b);
}

std::uint64_t isqrt(u64 n) noexcept
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

std::optional<std::uint64_t> is_perfect_square(u64 n) noexcept
{
    u64 const r = isqrt(n);
    if (static_cast<u128>(r) * r == n)
        return r;
    return std::nullopt;
}

std::vector<std::uint64_t> primes_up_to(u64 bound)
{
    std::vector<u64> primes;
    if (bound < 2)
        return primes;
    // odd-only sieve: index i represents 2i+1
    std::vector<bool> composite(bound / 2 + 1, false);
    primes.push_back(2);
    for (u64 i = 1; 2 * i + 1 <= bound; ++i) {
        if (composite[i])
            continue;
        u64 const p = 2 * i + 1;
        primes.push_back(p);
        for (u64 j = p * p; j <= bound; j += 2 * p)
            composite[j / 2] = true;
    }
    return primes;
}

std::span<std::uint64_t const> small_primes()
{
    static std::vector<u64> const table = primes_up_to(trial_bound);
    return table;
}

std::vector<std::pair<std::uint64_t, int>> factor(u64 n)
{
    std::vector<std::pair<u64, int>> result;
    if (n <= 1)
        return result;
    for (u64 p : small_primes()) {
        if (p * p > n)
            break;
        if (n % p)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        result.emplace_back(p, e);
    }
    if (n > 1) {
        std::vector<u64> rest;
        if (n < trial_bound * trial_bound)
            rest.push_back(n); // no factor below 10^6, so n is prime
        else
            factor_cofactor(n, rest);
        std::sort(rest.begin(), rest.end());
        for (u64 p : rest) {
            if (!result.empty() && result.back().first == p)
                ++result.back().second;
            else
                result.emplace_back(p, 1);
        }
    }
    return result;
}

bool is_squarefree(u64 n)
{
    if (n == 0)
        return false;
    auto const f = factor(n);
    return std::all_of(f.begin(), f.end(), [](auto const & pe) { return pe.second == 1; });
}

FactoredSquarefree factor_squarefree(std::int64_t n)
{
    if (n < 1)
        fail(ErrorKind::NonPositive, std::to_string(n) + " is not positive");
    auto const f = factor(static_cast<u64>(n));
    std::vector<u64> primes;
    primes.reserve(f.size());
    for (auto [p, e] : f) {
        if (e > 1)
            fail(ErrorKind::NotSquarefree,
                 std::to_string(p) + "^2 divides " + std::to_string(n));
        primes.push_back(p);
    }
    return {static_cast<u64>(n), std::move(primes)};
}

int kronecker_symbol(std::int64_t D, std::int64_t n)
{
    if (n < 1)
        fail(ErrorKind::NonPositive, "kronecker_symbol needs n >= 1");
    int result = 1;
    // strip factors of two from n
    while (n % 2 == 0) {
        n /= 2;
        std::int64_t const r = mod(D, 8);
        if (r == 0 || r == 2 || r == 4 || r == 6)
            return 0;
        if (r == 3 || r == 5)
            result = -result;
    }
    // Jacobi symbol (D/n) for odd n
    std::int64_t a = mod(D, n);
    std::int64_t m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t const r = m % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3)
            result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

SpfSieve::SpfSieve(std::uint32_t bound) : bound_(bound), spf_(static_cast<std::size_t>(bound) + 1, 0)
{
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (spf_[i])
            continue;
        spf_[i] = static_cast<std::uint32_t>(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) {
            if (!spf_[j])
                spf_[j] = static_cast<std::uint32_t>(i);
        }
    }
}

bool SpfSieve::squarefree_primes(std::uint32_t n, std::vector<std::uint32_t> & out) const
{
    while (n > 1) {
        std::uint32_t const p = spf_[n];
        n /= p;
        if (n % p == 0)
            return false;
        out.push_back(p);
    }
    return true;
}

} // namespace genuslab
