#pragma once

#include "genuslab/arith.hpp"
#include "genuslab/scalar.hpp"

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace genuslab {

/// The unit (x + y*sqrt(radicand)) / scale of norm +-1.
struct FundamentalUnit {
    std::int64_t radicand = 0;
    mpz_class x;
    mpz_class y;
    int scale = 1; // 1 or 2
    int norm = 1;  // +1 or -1

    friend bool operator==(FundamentalUnit const &, FundamentalUnit const &) = default;
};

/// Fundamental discriminant of Q(sqrt(m)): m when m = 1 (mod 4), else 4m.
std::int64_t discriminant(std::int64_t m);

/// Squarefree radicand m with discriminant(m) == D.
std::int64_t radicand_of(std::int64_t D);

bool is_fundamental_discriminant(std::int64_t D);

/// Prime-discriminant radicands p* generating the genus field of Q(sqrt(m)).
/// Odd p contributes (-1)^((p-1)/2) p; the prime 2 contributes 2, -2 or -1
/// when m = 2, 6 (mod 8) or m = 3 (mod 4) respectively.
std::vector<std::int64_t> genus_generators(std::int64_t m);

/// Generators of the maximal real subfield of the genus field of the real
/// quadratic field Q(sqrt(d)). This is the Hilbert class field exactly when
/// that field is abelian over Q.
std::vector<std::int64_t> hilbert_radicands_if_abelian(std::int64_t d);

/// Smallest unit > 1 of the maximal order of discriminant D > 0, from the
/// continued fraction of (D mod 2 + sqrt(D))/2.
FundamentalUnit fundamental_unit(std::int64_t D);

/// Real estimate of h(D) for D > 0 from the analytic class number formula,
/// evaluated in the given scalar type.
template <class Scalar>
Scalar class_number_estimate(std::int64_t D, FundamentalUnit const & unit)
{
    scalar::CompensatedSum<Scalar> sum;
    Scalar const pi_over_d = scalar::pi<Scalar>() / static_cast<Scalar>(D);
    for (std::int64_t a = 1; 2 * a < D; ++a) {
        int const chi = kronecker_symbol(D, a);
        if (chi == 0)
            continue;
        Scalar const term = scalar::log(scalar::sin(pi_over_d * static_cast<Scalar>(a)));
        sum.add(chi > 0 ? term : -term);
    }
    // chi(D - a) = chi(a) for D > 0, so the half sum is doubled
    Scalar log_eps = scalar::log_of_surd<Scalar>(unit.x, unit.y, unit.radicand);
    if (unit.scale == 2)
        log_eps -= scalar::log(static_cast<Scalar>(2));
    return -sum.value() / log_eps;
}

/// Exact class number h(D) of the quadratic field with fundamental
/// discriminant D. The real case rounds the analytic formula and accepts the
/// result only when it lies within 1e-4 of an integer, escalating from
/// extended to quadruple precision before raising PrecisionFailure.
std::int64_t class_number(std::int64_t D, int precision_bits = 113);

/// Independent route through binary quadratic forms: reduced forms for
/// D < 0, cycles of reduced indefinite forms (narrow class number) for D > 0.
std::int64_t class_number_forms(std::int64_t D, std::int64_t oracle_bound = 1'000'000);

/// Narrow class number and the sign of the fundamental unit norm as found by
/// the forms route (D > 0 only).
struct NarrowClassData {
    std::int64_t narrow_class_number = 0;
    int unit_norm = 1;
};
NarrowClassData narrow_class_data(std::int64_t D, std::int64_t oracle_bound = 1'000'000);

struct QuadraticFieldData {
    std::int64_t radicand = 0;
    std::int64_t discriminant = 0;
    std::optional<std::int64_t> class_number;
    std::optional<FundamentalUnit> unit;
};

/// Memo table of class numbers keyed by discriminant, optionally backed by an
/// append-only text file with lines "D<TAB>h<TAB>method". Reads may run
/// concurrently; inserts are serialized.
class ClassNumberCache {
public:
    explicit ClassNumberCache(int precision_bits = 113);
    /// Loads the file if present; later inserts are appended to it. Throws
    /// CacheError when the file is malformed or has conflicting records.
    ClassNumberCache(std::filesystem::path file, int precision_bits = 113);

    std::optional<std::int64_t> lookup(std::int64_t D) const;
    /// Cached value, or the analytic value computed and recorded now.
    std::int64_t get(std::int64_t D);
    /// Records h for D; throws CacheError if it contradicts a stored value.
    void store(std::int64_t D, std::int64_t h, std::string const & method);

    std::size_t size() const;
    std::optional<std::filesystem::path> const & file() const noexcept { return file_; }

private:
    struct Entry {
        std::int64_t h;
        std::string method;
    };

    int precision_bits_;
    std::optional<std::filesystem::path> file_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::int64_t, Entry> entries_;
};

/// Process-wide in-memory cache.
ClassNumberCache & default_class_number_cache();

QuadraticFieldData describe_quadratic(std::int64_t m, ClassNumberCache & cache);

} // namespace genuslab
