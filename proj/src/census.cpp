#include "genuslab/census.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/biquadratic.hpp"
#include "genuslab/errors.hpp"
#include "genuslab/euclid.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace genuslab {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t max_census_bound = 10'000'000'000'000'000ULL; // 10^16

std::int64_t pow3(int k)
{
    std::int64_t r = 1;
    while (k-- > 0)
        r *= 3;
    return r;
}

int decade_of(std::uint64_t v)
{
    int k = 0;
    while (v >= 10) {
        v /= 10;
        ++k;
    }
    return k;
}

bool sampled(std::uint64_t M, std::uint32_t modulus)
{
    if (modulus <= 1)
        return true;
    // splitmix64 finalizer
    std::uint64_t z = M + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z % modulus == 0;
}

/// Visits every ordered assignment of the primes of M to three slots.
template <class F>
void for_each_assignment(std::vector<std::uint64_t> const & primes, F && f)
{
    std::size_t const n = primes.size();
    std::int64_t const count = pow3(static_cast<int>(n));
    for (std::int64_t code = 0; code < count; ++code) {
        std::array<std::uint64_t, 3> slots{1, 1, 1};
        std::int64_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            slots[static_cast<std::size_t>(c % 3)] *= primes[i];
            c /= 3;
        }
        f(slots);
    }
}

int residue_c(std::array<std::uint64_t, 3> const & m)
{
    return (m[0] % 4 == m[1] % 4 && m[1] % 4 == m[2] % 4) ? 1 : 4;
}

bool degenerate(std::array<std::uint64_t, 3> const & m)
{
    return (m[0] == 1) + (m[1] == 1) + (m[2] == 1) >= 2;
}

/// Canonical triples of M, sorted.
std::vector<FieldTriple> canonical_triples(std::uint64_t M, std::vector<std::uint64_t> const & primes)
{
    std::vector<FieldTriple> out;
    for_each_assignment(primes, [&](std::array<std::uint64_t, 3> const & m) {
        if (degenerate(m) || !(m[0] < m[1] && m[1] < m[2]))
            return;
        int const c = residue_c(m);
        u128 const root = static_cast<u128>(M) * static_cast<unsigned>(c);
        u128 const disc = root * root;
        std::uint64_t const d = disc > std::numeric_limits<std::uint64_t>::max()
                                    ? std::numeric_limits<std::uint64_t>::max()
                                    : static_cast<std::uint64_t>(disc);
        out.push_back({m, c, d});
    });
    std::sort(out.begin(), out.end(), [](FieldTriple const & a, FieldTriple const & b) { return a.m < b.m; });
    return out;
}

void add_field(CensusReport & r, int omega, std::uint64_t disc, std::uint64_t count)
{
    if (count == 0)
        return;
    r.total += count;
    r.by_omega[omega] += count;
    if (omega <= 4)
        r.euclid_eligible += count;
    r.by_decade[decade_of(disc)][omega] += count;
}

void merge_into(CensusReport & into, CensusReport const & part)
{
    into.total += part.total;
    into.euclid_eligible += part.euclid_eligible;
    into.checked_fields += part.checked_fields;
    for (auto const & [w, c] : part.by_omega)
        into.by_omega[w] += c;
    for (auto const & [k, row] : part.by_decade)
        for (auto const & [w, c] : row)
            into.by_decade[k][w] += c;
}

/// Rebuilds the fields of M one by one and checks them against the closed
/// form count and the field-level identities.
void check_modulus(std::uint64_t M, std::vector<std::uint64_t> const & primes, ModulusCount const & expected,
                   std::uint64_t X, CensusOptions const & options, bool every_field, CensusReport & part)
{
    std::uint64_t ordered_congruent = 0, ordered_mixed = 0;
    for_each_assignment(primes, [&](std::array<std::uint64_t, 3> const & m) {
        if (degenerate(m))
            return;
        (residue_c(m) == 1 ? ordered_congruent : ordered_mixed) += 1;
    });
    auto const triples = canonical_triples(M, primes);
    std::uint64_t canon_congruent = 0, canon_mixed = 0;
    for (auto const & t : triples)
        (t.c == 1 ? canon_congruent : canon_mixed) += 1;
    if (ordered_congruent != 6 * canon_congruent || ordered_mixed != 6 * canon_mixed ||
        canon_congruent != expected.congruent || canon_mixed != expected.mixed)
        fail(ErrorKind::InternalInconsistency, "field count mismatch for M = " + std::to_string(M));

    for (auto const & t : triples) {
        if (t.discriminant > X || (!every_field && t.discriminant > options.check_limit && !sampled(M, options.sample_modulus)))
            continue;
        auto const K = BiquadraticField::from_triple(t.m[0], t.m[1], t.m[2]);
        int const omega = static_cast<int>(primes.size()) + (t.c == 4 ? 1 : 0);
        if (K.c() != t.c || K.discriminant() != t.discriminant || discriminant_of(K) != t.discriminant ||
            K.omega() != omega)
            fail(ErrorKind::InternalInconsistency, "field identity failed for M = " + std::to_string(M));
        genus_number(K);
        ++part.checked_fields;
    }
}

void census_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t X, SpfSieve const & sieve,
                  CensusOptions const & options, CensusReport & part)
{
    std::vector<std::uint32_t> raw;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t M = lo | 1; M <= hi; M += 2) {
        raw.clear();
        if (!sieve.squarefree_primes(static_cast<std::uint32_t>(M), raw))
            continue;
        primes.assign(raw.begin(), raw.end());
        std::sort(primes.begin(), primes.end());
        auto const counts = count_for_modulus(M, primes);
        int const n = static_cast<int>(primes.size());
        u128 const sq = static_cast<u128>(M) * M;
        if (sq <= X)
            add_field(part, n, static_cast<std::uint64_t>(sq), counts.congruent);
        if (16 * sq <= X)
            add_field(part, n + 1, static_cast<std::uint64_t>(16 * sq), counts.mixed);

        bool const small = sq <= options.check_limit;
        if (small || sampled(M, options.sample_modulus))
            check_modulus(M, primes, counts, X, options, small, part);
    }
}

std::string serialize(CensusReport const & r, std::uint64_t next)
{
    std::ostringstream os;
    os << "X=" << r.X << " next=" << next << " total=" << r.total << " eligible=" << r.euclid_eligible
       << " checked=" << r.checked_fields << " omega=";
    bool first = true;
    for (auto const & [w, c] : r.by_omega) {
        os << (first ? "" : ",") << w << ':' << c;
        first = false;
    }
    os << " decade=";
    first = true;
    for (auto const & [k, row] : r.by_decade)
        for (auto const & [w, c] : row) {
            os << (first ? "" : ",") << k << ':' << w << ':' << c;
            first = false;
        }
    return os.str();
}

/// Restores a checkpoint for the same X; returns the next M to process.
std::optional<std::uint64_t> restore(std::filesystem::path const & path, CensusReport & r)
{
    std::ifstream in(path);
    std::string line;
    if (!in || !std::getline(in, line))
        return std::nullopt;
    std::istringstream is(line);
    std::string token;
    CensusReport loaded;
    std::optional<std::uint64_t> next;
    try {
        while (is >> token) {
            auto const eq = token.find('=');
            if (eq == std::string::npos)
                fail(ErrorKind::CacheError, "malformed checkpoint token " + token);
            std::string const key = token.substr(0, eq), value = token.substr(eq + 1);
            if (key == "X")
                loaded.X = std::stoull(value);
            else if (key == "next")
                next = std::stoull(value);
            else if (key == "total")
                loaded.total = std::stoull(value);
            else if (key == "eligible")
                loaded.euclid_eligible = std::stoull(value);
            else if (key == "checked")
                loaded.checked_fields = std::stoull(value);
            else if (key == "omega" || key == "decade") {
                std::istringstream parts(value);
                std::string item;
                while (std::getline(parts, item, ',')) {
                    std::vector<std::uint64_t> f;
                    std::istringstream fields(item);
                    std::string x;
                    while (std::getline(fields, x, ':'))
                        f.push_back(std::stoull(x));
                    if (key == "omega" && f.size() == 2)
                        loaded.by_omega[static_cast<int>(f[0])] = f[1];
                    else if (key == "decade" && f.size() == 3)
                        loaded.by_decade[static_cast<int>(f[0])][static_cast<int>(f[1])] = f[2];
                    else
                        fail(ErrorKind::CacheError, "malformed checkpoint entry " + item);
                }
            }
        }
    } catch (std::logic_error const &) {
        fail(ErrorKind::CacheError, "malformed checkpoint " + path.string());
    }
    if (!next || loaded.X != r.X)
        return std::nullopt;
    loaded.seconds = 0;
    r = loaded;
    return next;
}

void save(std::filesystem::path const & path, CensusReport const & r, std::uint64_t next)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            fail(ErrorKind::CacheError, "cannot write checkpoint " + tmp.string());
        out << serialize(r, next) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

bool CensusReport::same_counts(CensusReport const & o) const
{
    return X == o.X && total == o.total && by_omega == o.by_omega && by_genus == o.by_genus &&
           euclid_eligible == o.euclid_eligible && by_decade == o.by_decade && checked_fields == o.checked_fields;
}

ModulusCount count_for_modulus(std::uint64_t M, std::vector<std::uint64_t> const & primes)
{
    int const n = static_cast<int>(primes.size());
    if (n == 0)
        return {};
    int const a = static_cast<int>(std::count_if(primes.begin(), primes.end(), [](std::uint64_t p) { return p % 4 == 1; }));
    int const b = n - a;
    // slot residues all equal: every slot holds an even (or every slot an odd)
    // number of primes = 3 (mod 4); counted by a character sum over the slots
    std::int64_t const p3 = pow3(b), alt = (b % 2 == 0) ? 1 : -1, m3 = alt * p3;
    std::int64_t const even = (p3 + 3 + 3 * alt + m3) / 8;
    std::int64_t const odd = (p3 - 3 + 3 * alt - m3) / 8;
    std::int64_t const equal = pow3(a) * (even + odd);
    // the three assignments putting every prime in one slot are degenerate
    std::int64_t const equal_nd = equal - (M % 4 == 1 ? 3 : 0);
    std::int64_t const total_nd = pow3(n) - 3;
    if (equal_nd % 6 != 0 || (total_nd - equal_nd) % 6 != 0)
        fail(ErrorKind::InternalInconsistency, "assignment count not divisible by 6 for M = " + std::to_string(M));
    return {static_cast<std::uint64_t>(equal_nd / 6), static_cast<std::uint64_t>((total_nd - equal_nd) / 6)};
}

CensusReport count_S(std::uint64_t X, CensusOptions const & options)
{
    if (X == 0)
        fail(ErrorKind::NonPositive, "census bound must be positive");
    if (X > max_census_bound)
        fail(ErrorKind::InvalidArgument, "census bound above 10^16");
    auto const start = std::chrono::steady_clock::now();

    std::uint64_t const root = isqrt(X);
    SpfSieve const sieve(static_cast<std::uint32_t>(std::max<std::uint64_t>(root, 2)));
    unsigned const threads = std::max(1u, options.threads);

    CensusReport report;
    report.X = X;
    std::uint64_t next = 1;
    if (options.checkpoint)
        if (auto resumed = restore(*options.checkpoint, report))
            next = *resumed;

    std::uint64_t const chunk = std::max<std::uint64_t>(1024, root / 256 + 1);
    while (next <= root) {
        std::vector<CensusReport> parts(threads);
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        std::uint64_t lo = next;
        for (unsigned t = 0; t < threads && lo <= root; ++t) {
            std::uint64_t const hi = std::min(root, lo + chunk - 1);
            pool.emplace_back([&, t, lo, hi] {
                try {
                    census_range(lo, hi, X, sieve, options, parts[t]);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
            lo = hi + 1;
        }
        for (auto & th : pool)
            th.join();
        for (auto const & e : errors)
            if (e)
                std::rethrow_exception(e);
        for (auto const & p : parts)
            merge_into(report, p);
        next = lo;
        if (options.checkpoint)
            save(*options.checkpoint, report, next);
    }

    for (auto const & [w, c] : report.by_omega)
        report.by_genus[std::uint64_t{1} << (w - 2)] = c;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::uint64_t count_S_by_genus(std::uint64_t X, int n, CensusOptions const & options)
{
    if (n < 0)
        fail(ErrorKind::InvalidArgument, "genus exponent must be nonnegative");
    auto const r = count_S(X, options);
    auto const it = r.by_omega.find(n + 2);
    return it == r.by_omega.end() ? 0 : it->second;
}

void for_each_field(std::uint64_t X, std::function<void(FieldTriple const &)> const & visit)
{
    if (X > max_census_bound)
        fail(ErrorKind::InvalidArgument, "census bound above 10^16");
    std::uint64_t const root = isqrt(X);
    SpfSieve const sieve(static_cast<std::uint32_t>(std::max<std::uint64_t>(root, 2)));
    std::vector<std::uint32_t> raw;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t M = 3; M <= root; M += 2) {
        raw.clear();
        if (!sieve.squarefree_primes(static_cast<std::uint32_t>(M), raw))
            continue;
        primes.assign(raw.begin(), raw.end());
        std::sort(primes.begin(), primes.end());
        for (auto const & t : canonical_triples(M, primes))
            if (t.discriminant <= X)
                visit(t);
    }
}

std::vector<std::uint64_t> squarefree_omega_counts(std::uint64_t N)
{
    std::vector<std::uint8_t> omega(N + 1, 0);
    std::vector<bool> squarefree(N + 1, true);
    for (std::uint64_t p : primes_up_to(N)) {
        for (std::uint64_t k = p; k <= N; k += p)
            ++omega[k];
        if (p <= N / p)
            for (std::uint64_t k = p * p; k <= N; k += p * p)
                squarefree[k] = false;
    }
    std::vector<std::uint64_t> counts;
    for (std::uint64_t m = 1; m <= N; ++m) {
        if (!squarefree[m])
            continue;
        if (omega[m] >= counts.size())
            counts.resize(omega[m] + 1, 0);
        ++counts[omega[m]];
    }
    return counts;
}

SatheSelbergRow sathe_selberg_count(std::uint64_t N, int n)
{
    if (N < 2 || n < 1)
        fail(ErrorKind::InvalidArgument, "need N >= 2 and n >= 1");
    auto const counts = squarefree_omega_counts(N);
    SatheSelbergRow row;
    row.N = N;
    row.n = n;
    row.exact = static_cast<std::size_t>(n) < counts.size() ? counts[static_cast<std::size_t>(n)] : 0;
    double const x = static_cast<double>(N), lx = std::log(x), llx = std::log(lx);
    row.main_term = x / lx * std::pow(llx, n - 1) / std::tgamma(static_cast<double>(n));
    row.ratio = static_cast<double>(row.exact) / row.main_term;
    return row;
}

ConstantEstimate euler_constant(std::uint64_t prime_bound)
{
    if (prime_bound < 3)
        fail(ErrorKind::InvalidArgument, "prime bound must be at least 3");
    __float128 product = 1;
    for (std::uint64_t p : primes_up_to(prime_bound)) {
        if (p == 2)
            continue;
        __float128 const q = static_cast<__float128>(p);
        __float128 const f = (q - 1) / q;
        product *= f * f * f * ((q + 3) / q);
    }
    ConstantEstimate e;
    e.prime_bound = prime_bound;
    e.truncated_product = static_cast<long double>(product);
    e.truncated_product_all = static_cast<long double>(product * 5 / 16);
    e.tail_bound = 6.0L / static_cast<long double>(prime_bound);
    long double const theorem = 7.0L / 1920.0L, proof = 7.0L / 768.0L;
    e.candidate_A = {
        {"7/1920*prod_all_p", theorem * e.truncated_product_all},
        {"7/768*prod_odd_p", proof * e.truncated_product},
        {"7/1920*prod_odd_p", theorem * e.truncated_product},
        {"7/768*prod_all_p", proof * e.truncated_product_all},
    };
    return e;
}

CoefficientExperiment coefficient_experiment(std::vector<std::uint64_t> const & grid, CensusOptions const & options,
                                             std::uint64_t prime_bound)
{
    if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()))
        fail(ErrorKind::InvalidArgument, "grid must be nonempty and ascending");
    CoefficientExperiment out;
    out.constant = euler_constant(prime_bound);
    auto const & cands = out.constant.candidate_A;

    auto const nearest = [&](long double value, std::size_t limit) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < limit; ++i)
            if (std::fabs(std::log(value / cands[i].value)) < std::fabs(std::log(value / cands[best].value)))
                best = i;
        return cands[best].label;
    };

    for (std::uint64_t X : grid) {
        CoefficientRow row;
        row.X = X;
        row.S = count_S(X, options).total;
        long double const lx = std::log(static_cast<long double>(X));
        row.ratio = static_cast<long double>(row.S) / (std::sqrt(static_cast<long double>(X)) * lx * lx);
        for (auto const & c : cands)
            row.relative.push_back(row.ratio / c.value);
        row.nearest = row.S > 0 ? nearest(row.ratio, cands.size()) : "";
        out.rows.push_back(std::move(row));
    }

    long double const first = out.rows.front().ratio, last = out.rows.back().ratio;
    if (out.rows.size() < 2 || std::fabs(last - first) <= 1e-3L * std::fabs(first))
        out.trend_direction = "flat";
    else
        out.trend_direction = last > first ? "increasing" : "decreasing";

    if (out.rows.size() >= 3) {
        using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
        using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
        auto const rows = static_cast<Eigen::Index>(out.rows.size());
        Mat A(rows, 3);
        Vec y(rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            auto const & r = out.rows[static_cast<std::size_t>(i)];
            long double const lx = std::log(static_cast<long double>(r.X));
            A(i, 0) = lx * lx;
            A(i, 1) = lx;
            A(i, 2) = 1;
            y(i) = static_cast<long double>(r.S) / std::sqrt(static_cast<long double>(r.X));
        }
        Vec const coef = A.colPivHouseholderQr().solve(y);
        out.fitted_leading = coef(0);
    }

    // the two printed constants are the first two candidates
    if (out.fitted_leading && *out.fitted_leading > 0) {
        out.trend_toward = nearest(*out.fitted_leading, 2);
        out.note = "decided by the leading coefficient of the fit S/sqrt(X) = A log^2 X + B log X + C";
    } else {
        out.trend_toward = last > 0 ? nearest(last, 2) : "";
        out.note = "decided by the ratio at the largest X";
    }
    out.note += "; comparison curves for S_n use the exponent (log log X)^(n-1)";
    return out;
}

DensityReport density_report(std::uint64_t X, CensusOptions const & options, std::uint64_t verdict_bound,
                             ClassNumberCache * cache)
{
    DensityReport out;
    out.X = X;
    auto const r = count_S(X, options);
    out.eligible_fraction = r.total ? static_cast<double>(r.euclid_eligible) / static_cast<double>(r.total) : 0.0;
    for (auto const & [k, row] : r.by_decade) {
        DecadeRow d;
        d.decade = k;
        d.by_omega = row;
        for (auto const & [w, c] : row) {
            d.total += c;
            if (w <= 4)
                d.eligible += c;
        }
        d.eligible_fraction = d.total ? static_cast<double>(d.eligible) / static_cast<double>(d.total) : 0.0;
        out.decades.push_back(std::move(d));
    }

    if (verdict_bound > 0) {
        ClassNumberCache & memo = cache ? *cache : default_class_number_cache();
        VerdictTally tally;
        tally.bound = verdict_bound;
        for_each_field(std::min(verdict_bound, X), [&](FieldTriple const & t) {
            auto const K = BiquadraticField::from_triple(t.m[0], t.m[1], t.m[2]);
            auto const v = euclidean_verdict(K, memo);
            if (v.omega > 4 && v.status != VerdictStatus::NoNonCyclic)
                fail(ErrorKind::InternalInconsistency, "omega > 4 field without NoNonCyclic verdict");
            if (v.status == VerdictStatus::Exists && (v.omega > 4 || v.h_K.value_or(0) > 2))
                fail(ErrorKind::InternalInconsistency, "Exists verdict with omega > 4 or h_K > 2");
            ++tally.fields;
            ++tally.by_status[std::string(to_string(v.status))];
        });
        out.verdicts = std::move(tally);
    }
    return out;
}

std::uint64_t ordered_factorization_check(std::uint64_t M)
{
    if (M > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorKind::Overflow, "modulus exceeds 63 bits");
    auto const f = factor_squarefree(static_cast<std::int64_t>(M));
    std::vector<std::uint64_t> divisors{1};
    for (std::uint64_t p : f.primes()) {
        std::size_t const size = divisors.size();
        for (std::size_t i = 0; i < size; ++i)
            divisors.push_back(divisors[i] * p);
    }
    std::uint64_t count = 0;
    for (std::uint64_t m1 : divisors)
        for (std::uint64_t m2 : divisors)
            if ((M / m1) % m2 == 0)
                ++count;
    return count;
}

} // namespace genuslab
