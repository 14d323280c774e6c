#pragma once

#include "genuslab/quadratic.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genuslab {

struct CensusOptions {
    unsigned threads = 1;
    /// Every field with discriminant up to this bound is rebuilt and passes
    /// the discriminant and genus-rank identities.
    std::uint64_t check_limit = 100'000'000;
    /// Above check_limit, one modulus M in this many is checked (by hash).
    std::uint32_t sample_modulus = 100;
    /// When set, progress is saved here after each batch and resumed from it.
    std::optional<std::filesystem::path> checkpoint;
};

struct CensusReport {
    std::uint64_t X = 0;
    std::uint64_t total = 0;
    std::map<int, std::uint64_t> by_omega;
    /// Keyed by genus number 2^(omega - 2).
    std::map<std::uint64_t, std::uint64_t> by_genus;
    /// Fields with omega <= 4.
    std::uint64_t euclid_eligible = 0;
    /// decade k (10^k <= disc < 10^(k+1)) -> omega -> count
    std::map<int, std::map<int, std::uint64_t>> by_decade;
    /// Fields rebuilt and checked individually.
    std::uint64_t checked_fields = 0;
    double seconds = 0.0;

    /// Equality of every count; timing is ignored.
    bool same_counts(CensusReport const & other) const;
};

/// A canonical triple m1 < m2 < m3 with its discriminant c^2 (m1 m2 m3)^2.
struct FieldTriple {
    std::array<std::uint64_t, 3> m;
    int c;
    std::uint64_t discriminant;
};

/// Exact count of fields with discriminant <= X.
CensusReport count_S(std::uint64_t X, CensusOptions const & options = {});

/// Fields with discriminant <= X and genus number 2^n.
std::uint64_t count_S_by_genus(std::uint64_t X, int n, CensusOptions const & options = {});

/// Calls visit for every field with discriminant <= X, in increasing order of
/// m1 m2 m3 and then lexicographically.
void for_each_field(std::uint64_t X, std::function<void(FieldTriple const &)> const & visit);

/// Fields of the given odd squarefree product M = m1 m2 m3, in both
/// residue classes, by direct count over the 3^omega(M) slot assignments.
struct ModulusCount {
    std::uint64_t congruent = 0; // c = 1
    std::uint64_t mixed = 0;     // c = 4
};
ModulusCount count_for_modulus(std::uint64_t M, std::vector<std::uint64_t> const & primes);

struct SatheSelbergRow {
    std::uint64_t N = 0;
    int n = 0;
    std::uint64_t exact = 0;
    double main_term = 0.0;
    double ratio = 0.0;
};

/// counts[n] = #{m <= N squarefree with omega(m) = n}.
std::vector<std::uint64_t> squarefree_omega_counts(std::uint64_t N);

/// Exact count against (N / log N) (log log N)^(n-1) / (n-1)!.
SatheSelbergRow sathe_selberg_count(std::uint64_t N, int n);

struct ConstantCandidate {
    std::string label;
    long double value = 0;
};

struct ConstantEstimate {
    std::uint64_t prime_bound = 0;
    /// Product over odd p <= P of (1 - 1/p)^3 (1 + 3/p).
    long double truncated_product = 0;
    /// The same product including the factor 5/16 at p = 2.
    long double truncated_product_all = 0;
    /// Bound 6/P on the relative effect of the primes beyond P.
    long double tail_bound = 0;
    std::vector<ConstantCandidate> candidate_A;
};

ConstantEstimate euler_constant(std::uint64_t prime_bound);

struct CoefficientRow {
    std::uint64_t X = 0;
    std::uint64_t S = 0;
    /// S / (sqrt(X) log^2 X)
    long double ratio = 0;
    /// ratio / candidate for each candidate_A entry, in order.
    std::vector<long double> relative;
    std::string nearest;
};

struct CoefficientExperiment {
    ConstantEstimate constant;
    std::vector<CoefficientRow> rows;
    /// "increasing", "decreasing" or "flat" across the grid.
    std::string trend_direction;
    /// Leading coefficient A of the least-squares fit
    /// S / sqrt(X) = A log^2 X + B log X + C, with at least three grid points.
    std::optional<long double> fitted_leading;
    /// Which of the two printed constants the data points to.
    std::string trend_toward;
    std::string note;
};

CoefficientExperiment coefficient_experiment(std::vector<std::uint64_t> const & grid,
                                             CensusOptions const & options = {},
                                             std::uint64_t prime_bound = 1'000'000);

struct DecadeRow {
    int decade = 0;
    std::uint64_t total = 0;
    std::uint64_t eligible = 0;
    double eligible_fraction = 0.0;
    std::map<int, std::uint64_t> by_omega;
};

struct VerdictTally {
    std::uint64_t bound = 0;
    std::uint64_t fields = 0;
    std::map<std::string, std::uint64_t> by_status;
};

struct DensityReport {
    std::uint64_t X = 0;
    double eligible_fraction = 0.0;
    std::vector<DecadeRow> decades;
    std::optional<VerdictTally> verdicts;
};

/// Share of fields with omega <= 4 per decade of the discriminant, with
/// full verdicts for discriminants up to verdict_bound (0 disables them).
DensityReport density_report(std::uint64_t X, CensusOptions const & options = {},
                             std::uint64_t verdict_bound = 0, ClassNumberCache * cache = nullptr);

/// Number of ordered triples (m1, m2, m3) with m1 m2 m3 = M, counted over
/// pairs of divisors; equals 3^omega(M).
std::uint64_t ordered_factorization_check(std::uint64_t M);

} // namespace genuslab
