#include "genuslab/multiquadratic.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/errors.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <string>

namespace genuslab {

namespace {

bool has_coord(std::vector<std::uint64_t> const & primes, std::uint64_t p)
{
    return std::binary_search(primes.begin(), primes.end(), p);
}

} // namespace

MultiquadraticField::MultiquadraticField(std::vector<std::int64_t> generators)
{
    for (std::int64_t r : generators)
        insert(r);
    generators_ = std::move(generators);
}

MultiquadraticField::Vec MultiquadraticField::to_vec(std::int64_t radicand)
{
    if (radicand == 0)
        fail(ErrorKind::DegenerateRadicand, "radicand 0");
    Vec v;
    v.sign = radicand < 0;
    auto const f = factor_squarefree(radicand < 0 ? -radicand : radicand);
    v.primes.assign(f.primes().begin(), f.primes().end());
    return v;
}

std::int64_t MultiquadraticField::to_radicand(Vec const & v)
{
    std::int64_t r = 1;
    for (std::uint64_t p : v.primes) {
        if (r > std::numeric_limits<std::int64_t>::max() / static_cast<std::int64_t>(p))
            fail(ErrorKind::Overflow, "radicand product exceeds 64 bits");
        r *= static_cast<std::int64_t>(p);
    }
    return v.sign ? -r : r;
}

MultiquadraticField::Vec MultiquadraticField::add(Vec const & a, Vec const & b)
{
    Vec out;
    out.sign = a.sign != b.sign;
    std::set_symmetric_difference(a.primes.begin(), a.primes.end(), b.primes.begin(),
                                  b.primes.end(), std::back_inserter(out.primes));
    return out;
}

std::uint64_t MultiquadraticField::lead(Vec const & v)
{
    return v.primes.empty() ? 0 : v.primes.back();
}

MultiquadraticField::Vec MultiquadraticField::reduce(Vec v) const
{
    // basis_ is sorted by decreasing lead
    for (Vec const & b : basis_) {
        std::uint64_t const c = lead(b);
        bool const present = c == 0 ? v.sign : has_coord(v.primes, c);
        if (present)
            v = add(v, b);
    }
    return v;
}

void MultiquadraticField::insert(std::int64_t radicand)
{
    Vec v = reduce(to_vec(radicand));
    if (!v.sign && v.primes.empty())
        return;
    auto pos = std::find_if(basis_.begin(), basis_.end(),
                            [&](Vec const & b) { return lead(b) < lead(v); });
    basis_.insert(pos, std::move(v));
}

bool MultiquadraticField::contains(std::int64_t radicand) const
{
    Vec const v = reduce(to_vec(radicand));
    return !v.sign && v.primes.empty();
}

bool MultiquadraticField::contains(MultiquadraticField const & other) const
{
    return std::all_of(other.generators_.begin(), other.generators_.end(),
                       [&](std::int64_t r) { return contains(r); });
}

bool MultiquadraticField::totally_real() const
{
    return !contains(-1) && std::none_of(basis_.begin(), basis_.end(),
                                         [](Vec const & b) { return b.sign; });
}

MultiquadraticField MultiquadraticField::real_subfield() const
{
    auto pivot = std::find(generators_.begin(), generators_.end(), std::int64_t{-1});
    if (pivot == generators_.end())
        pivot = std::find_if(generators_.begin(), generators_.end(),
                             [](std::int64_t r) { return r < 0; });
    if (pivot == generators_.end())
        return *this;

    Vec const pv = to_vec(*pivot);
    std::vector<std::int64_t> gens;
    for (auto it = generators_.begin(); it != generators_.end(); ++it) {
        if (it == pivot)
            continue;
        gens.push_back(*it < 0 ? to_radicand(add(to_vec(*it), pv)) : *it);
    }
    return MultiquadraticField(std::move(gens));
}

} // namespace genuslab
