#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace genuslab {

/// A positive squarefree integer together with its prime divisors in
/// increasing order. The value 1 is represented with an empty prime list.
class FactoredSquarefree {
public:
    FactoredSquarefree() = default;

    std::uint64_t value() const noexcept { return value_; }
    std::span<std::uint64_t const> primes() const noexcept { return primes_; }

    /// Number of distinct prime divisors.
    int omega() const noexcept { return static_cast<int>(primes_.size()); }
    /// Moebius function; never zero for this type.
    int mu() const noexcept { return (primes_.size() % 2 == 0) ? 1 : -1; }

    friend bool operator==(FactoredSquarefree const &, FactoredSquarefree const &) = default;

private:
    friend FactoredSquarefree factor_squarefree(std::int64_t n);
    FactoredSquarefree(std::uint64_t value, std::vector<std::uint64_t> primes)
        : value_(value), primes_(std::move(primes))
    {
    }

    std::uint64_t value_ = 1;
    std::vector<std::uint64_t> primes_;
};

/// Throws NonPositive for n < 1 and NotSquarefree when p^2 | n.
FactoredSquarefree factor_squarefree(std::int64_t n);

/// Full factorization as (prime, exponent) pairs, primes increasing.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Kronecker symbol (D/n) for n >= 1.
int kronecker_symbol(std::int64_t D, std::int64_t n);

/// The non-principal character modulo 4.
constexpr int chi4(std::int64_t n) noexcept
{
    std::int64_t const r = ((n % 4) + 4) % 4;
    return r == 1 ? 1 : (r == 3 ? -1 : 0);
}

/// Integer square root: floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n) noexcept;

/// Root r with r*r == n, or nothing.
std::optional<std::uint64_t> is_perfect_square(std::uint64_t n) noexcept;

/// Primes <= bound via the sieve of Eratosthenes; empty for bound < 2.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Shared read-only prime table up to 10^6, built on first use.
std::span<std::uint64_t const> small_primes();

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// Remainder in [0, m).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) noexcept
{
    std::int64_t const r = a % m;
    return r < 0 ? r + m : r;
}

/// Smallest-prime-factor table for [0, bound]; spf[0] = spf[1] = 0.
class SpfSieve {
public:
    explicit SpfSieve(std::uint32_t bound);

    std::uint32_t bound() const noexcept { return bound_; }
    std::uint32_t spf(std::uint32_t n) const noexcept { return spf_[n]; }

    /// Appends distinct prime factors of n to out; returns false when n is
    /// not squarefree (out is then unspecified).
    bool squarefree_primes(std::uint32_t n, std::vector<std::uint32_t> & out) const;

private:
    std::uint32_t bound_;
    std::vector<std::uint32_t> spf_;
};

} // namespace genuslab
