#include "genuslab/quadratic.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace genuslab {

namespace {

std::int64_t checked_abs(std::int64_t v)
{
    return v < 0 ? -v : v;
}

void require_radicand(std::int64_t m)
{
    if (m == 0 || m == 1)
        fail(ErrorKind::DegenerateRadicand, "radicand " + std::to_string(m));
    if (!is_squarefree(static_cast<std::uint64_t>(checked_abs(m))))
        fail(ErrorKind::NotSquarefree, std::to_string(m) + " is not squarefree");
}

template <class Scalar>
std::optional<std::int64_t> rounded_class_number(std::int64_t D, FundamentalUnit const & unit)
{
    constexpr long double tolerance = 1e-4L;
    Scalar const estimate = class_number_estimate<Scalar>(D, unit);
    Scalar const nearest = scalar::round(estimate);
    if (static_cast<long double>(scalar::abs(estimate - nearest)) >= tolerance || nearest < 1)
        return std::nullopt;
    return static_cast<std::int64_t>(nearest);
}

} // namespace

std::int64_t discriminant(std::int64_t m)
{
    require_radicand(m);
    return mod(m, 4) == 1 ? m : 4 * m;
}

bool is_fundamental_discriminant(std::int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    if (mod(D, 4) == 1)
        return is_squarefree(static_cast<std::uint64_t>(checked_abs(D)));
    if (mod(D, 4) != 0)
        return false;
    std::int64_t const m = D / 4;
    std::int64_t const r = mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(static_cast<std::uint64_t>(checked_abs(m)));
}

std::int64_t radicand_of(std::int64_t D)
{
    if (!is_fundamental_discriminant(D))
        fail(ErrorKind::NotFundamental, std::to_string(D) + " is not a fundamental discriminant");
    return mod(D, 4) == 1 ? D : D / 4;
}

std::vector<std::int64_t> genus_generators(std::int64_t m)
{
    require_radicand(m);
    std::vector<std::int64_t> gens;
    std::int64_t const r8 = mod(m, 8);
    if (r8 == 2)
        gens.push_back(2);
    else if (r8 == 6)
        gens.push_back(-2);
    else if (mod(m, 4) == 3)
        gens.push_back(-1);
    auto const factored = factor_squarefree(checked_abs(m));
    for (std::uint64_t p : factored.primes()) {
        if (p == 2)
            continue;
        auto const sp = static_cast<std::int64_t>(p);
        gens.push_back(p % 4 == 1 ? sp : -sp);
    }
    return gens;
}

std::vector<std::int64_t> hilbert_radicands_if_abelian(std::int64_t d)
{
    if (d <= 1)
        fail(ErrorKind::DegenerateRadicand, "need a real quadratic radicand > 1");
    require_radicand(d);
    std::vector<std::int64_t> ones, threes;
    auto const factored = factor_squarefree(d);
    for (std::uint64_t p : factored.primes()) {
        if (p == 2)
            continue;
        (p % 4 == 1 ? ones : threes).push_back(static_cast<std::int64_t>(p));
    }
    std::vector<std::int64_t> gens = ones;
    std::int64_t const r8 = d % 8;
    auto paired = [&] {
        for (std::size_t j = 1; j < threes.size(); ++j)
            gens.push_back(threes[0] * threes[j]);
    };
    if (d % 4 == 1) {
        paired();
    } else if (d % 4 == 3) {
        gens.insert(gens.end(), threes.begin(), threes.end());
    } else if (r8 == 6) {
        for (std::int64_t p : threes)
            gens.push_back(2 * p);
    } else {
        paired();
        gens.push_back(2);
    }
    return gens;
}

FundamentalUnit fundamental_unit(std::int64_t D)
{
    if (D <= 0 || !is_fundamental_discriminant(D))
        fail(ErrorKind::NotFundamental, std::to_string(D) + " is not a positive fundamental discriminant");

    std::int64_t const delta = D & 1;
    auto const s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D)));
    // complete quotients (P + sqrt(D)) / Q of w = (delta + sqrt(D)) / 2
    std::int64_t P = delta, Q = 2;
    // convergent recurrences seeded with p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1
    mpz_class p = 1, p_prev = 0, q = 0, q_prev = 1;
    mpz_class const c0 = (delta * delta - D) / 4;
    for (;;) {
        std::int64_t const a = (P + s) / Q;
        mpz_class const p_next = a * p + p_prev;
        mpz_class const q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        // norm of p - q*w
        mpz_class const norm = p * p - delta * p * q + c0 * q * q;
        if (norm == 1 || norm == -1) {
            FundamentalUnit unit;
            unit.norm = norm == 1 ? 1 : -1;
            mpz_class const t = 2 * p - delta * q; // unit = (t + q sqrt(D)) / 2
            if (delta == 1) {
                unit.radicand = D;
                if (mpz_even_p(t.get_mpz_t()) && mpz_even_p(q.get_mpz_t())) {
                    unit.x = t / 2;
                    unit.y = q / 2;
                    unit.scale = 1;
                } else {
                    unit.x = t;
                    unit.y = q;
                    unit.scale = 2;
                }
            } else {
                unit.radicand = D / 4;
                unit.x = p;
                unit.y = q;
                unit.scale = 1;
            }
            return unit;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

std::int64_t class_number(std::int64_t D, int precision_bits)
{
    if (!is_fundamental_discriminant(D))
        fail(ErrorKind::NotFundamental, std::to_string(D) + " is not a fundamental discriminant");

    if (D < 0) {
        std::int64_t const n = -D;
        std::int64_t sum = 0;
        for (std::int64_t a = 1; a < n; ++a)
            sum += kronecker_symbol(D, a) * a;
        std::int64_t const w = D == -3 ? 6 : (D == -4 ? 4 : 2);
        std::int64_t const num = w * checked_abs(sum);
        if (num % (2 * n) != 0)
            fail(ErrorKind::InternalInconsistency, "non-integral class number sum for " + std::to_string(D));
        return num / (2 * n);
    }

    FundamentalUnit const unit = fundamental_unit(D);
    if (precision_bits <= scalar::precision_bits<long double>()) {
        if (auto h = rounded_class_number<long double>(D, unit))
            return *h;
    }
    if (auto h = rounded_class_number<__float128>(D, unit))
        return *h;
    fail(ErrorKind::PrecisionFailure,
         "analytic class number for D = " + std::to_string(D) + " is not within 1e-4 of an integer");
}

NarrowClassData narrow_class_data(std::int64_t D, std::int64_t oracle_bound)
{
    if (D <= 0 || !is_fundamental_discriminant(D))
        fail(ErrorKind::NotFundamental, std::to_string(D) + " is not a positive fundamental discriminant");
    if (D > oracle_bound)
        fail(ErrorKind::OracleBoundExceeded, std::to_string(D) + " exceeds the forms oracle bound");

    auto const s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D)));
    struct Form {
        std::int64_t a, b, c;
        auto operator<=>(Form const &) const = default;
    };
    // reduced: 0 < b < sqrt(D), sqrt(D) - b < 2|a| < sqrt(D) + b
    std::map<Form, bool> visited;
    for (std::int64_t b = (D & 1) ? 1 : 2; b <= s; b += 2) {
        std::int64_t const n = (D - b * b) / 4;
        for (std::int64_t a = 1; 2 * a <= s + b; ++a) {
            if (2 * a + b <= s || n % a != 0)
                continue;
            visited.emplace(Form{a, b, -n / a}, false);
            visited.emplace(Form{-a, b, n / a}, false);
        }
    }
    auto rho = [&](Form const & f) {
        std::int64_t const m = 2 * checked_abs(f.c);
        std::int64_t const r = s - mod(s + f.b, m);
        return Form{f.c, r, (r * r - D) / (4 * f.c)};
    };

    std::int64_t const b0 = (D & 1) ? (s % 2 == 1 ? s : s - 1) : (s % 2 == 0 ? s : s - 1);
    Form const principal{1, b0, (b0 * b0 - D) / 4};

    NarrowClassData out;
    for (auto & [start, seen] : visited) {
        if (seen)
            continue;
        bool has_principal = false, has_minus_one = false;
        Form f = start;
        do {
            auto it = visited.find(f);
            if (it == visited.end())
                fail(ErrorKind::InternalInconsistency, "reduction left the set of reduced forms");
            it->second = true;
            has_principal |= f == principal;
            has_minus_one |= f.a == -1;
            f = rho(f);
        } while (!(f == start));
        ++out.narrow_class_number;
        if (has_principal)
            out.unit_norm = has_minus_one ? -1 : 1;
    }
    return out;
}

std::int64_t class_number_forms(std::int64_t D, std::int64_t oracle_bound)
{
    if (!is_fundamental_discriminant(D))
        fail(ErrorKind::NotFundamental, std::to_string(D) + " is not a fundamental discriminant");
    if (checked_abs(D) > oracle_bound)
        fail(ErrorKind::OracleBoundExceeded, std::to_string(D) + " exceeds the forms oracle bound");

    if (D > 0) {
        NarrowClassData const narrow = narrow_class_data(D, oracle_bound);
        return narrow.unit_norm == -1 ? narrow.narrow_class_number : narrow.narrow_class_number / 2;
    }

    std::int64_t const n = -D;
    std::int64_t count = 0;
    for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            std::int64_t const num = b * b + n;
            if (num % (4 * a) != 0)
                continue;
            std::int64_t const c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            ++count;
        }
    }
    return count;
}

ClassNumberCache::ClassNumberCache(int precision_bits) : precision_bits_(precision_bits) {}

ClassNumberCache::ClassNumberCache(std::filesystem::path file, int precision_bits)
    : precision_bits_(precision_bits), file_(std::move(file))
{
    std::ifstream in(*file_);
    if (!in)
        return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string d_text, h_text, method;
        if (!std::getline(fields, d_text, '\t') || !std::getline(fields, h_text, '\t') ||
            !std::getline(fields, method) || (method != "analytic" && method != "forms"))
            fail(ErrorKind::CacheError, file_->string() + ":" + std::to_string(lineno) + ": malformed record");
        char * end = nullptr;
        long long const D = std::strtoll(d_text.c_str(), &end, 10);
        bool bad = *end != '\0' || d_text.empty();
        long long const h = std::strtoll(h_text.c_str(), &end, 10);
        bad = bad || *end != '\0' || h_text.empty() || h < 1;
        if (bad)
            fail(ErrorKind::CacheError, file_->string() + ":" + std::to_string(lineno) + ": malformed record");
        auto [it, inserted] = entries_.emplace(D, Entry{h, method});
        if (!inserted && it->second.h != h)
            fail(ErrorKind::CacheError, file_->string() + ":" + std::to_string(lineno) +
                                            ": conflicting class numbers for D = " + std::to_string(D));
    }
}

std::optional<std::int64_t> ClassNumberCache::lookup(std::int64_t D) const
{
    std::shared_lock lock(mutex_);
    auto it = entries_.find(D);
    if (it == entries_.end())
        return std::nullopt;
    return it->second.h;
}

std::int64_t ClassNumberCache::get(std::int64_t D)
{
    if (auto h = lookup(D))
        return *h;
    std::int64_t const h = class_number(D, precision_bits_);
    store(D, h, "analytic");
    return h;
}

void ClassNumberCache::store(std::int64_t D, std::int64_t h, std::string const & method)
{
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.emplace(D, Entry{h, method});
    if (!inserted) {
        if (it->second.h != h)
            fail(ErrorKind::CacheError, "conflicting class numbers for D = " + std::to_string(D));
        return;
    }
    if (file_) {
        std::ofstream out(*file_, std::ios::app);
        if (!out)
            fail(ErrorKind::CacheError, "cannot append to " + file_->string());
        out << D << '\t' << h << '\t' << method << '\n';
    }
}

std::size_t ClassNumberCache::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

ClassNumberCache & default_class_number_cache()
{
    static ClassNumberCache cache;
    return cache;
}

QuadraticFieldData describe_quadratic(std::int64_t m, ClassNumberCache & cache)
{
    QuadraticFieldData data;
    data.radicand = m;
    data.discriminant = discriminant(m);
    data.class_number = cache.get(data.discriminant);
    if (m > 0)
        data.unit = fundamental_unit(data.discriminant);
    return data;
}

} // namespace genuslab
