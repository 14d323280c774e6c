#pragma once

#include <cstdint>
#include <vector>

namespace genuslab {

/// Compositum of quadratic fields Q(sqrt(r)) for a set of signed squarefree
/// radicands r. Radicands are vectors over F2 with one coordinate for the
/// sign and one per prime; the field has degree 2^rank over Q.
class MultiquadraticField {
public:
    MultiquadraticField() = default;
    explicit MultiquadraticField(std::vector<std::int64_t> generators);

    /// Generators in the order given (duplicates and dependent entries kept).
    std::vector<std::int64_t> const & generators() const noexcept { return generators_; }

    int rank() const noexcept { return static_cast<int>(basis_.size()); }
    std::uint64_t degree() const noexcept { return std::uint64_t{1} << rank(); }

    /// True when sqrt(r) lies in the field, i.e. r is in the F2 span.
    bool contains(std::int64_t radicand) const;
    bool contains(MultiquadraticField const & other) const;

    bool totally_real() const;

    /// Kernel of the sign character: the maximal totally real subfield.
    /// Uses -1 as the eliminating element when it is a generator, otherwise
    /// the first negative generator.
    MultiquadraticField real_subfield() const;

    friend bool operator==(MultiquadraticField const & a, MultiquadraticField const & b)
    {
        return a.rank() == b.rank() && a.contains(b);
    }

private:
    struct Vec {
        bool sign = false;
        std::vector<std::uint64_t> primes; // sorted, the support of the vector
    };

    static Vec to_vec(std::int64_t radicand);
    static std::int64_t to_radicand(Vec const & v);
    static Vec add(Vec const & a, Vec const & b);
    static std::uint64_t lead(Vec const & v);

    Vec reduce(Vec v) const;
    void insert(std::int64_t radicand);

    std::vector<std::int64_t> generators_;
    // echelon basis keyed by leading coordinate: sign is coordinate 0, primes
    // are coordinates p; the lead is the largest coordinate present
    std::vector<Vec> basis_;
};

} // namespace genuslab
