#pragma once

#include "genuslab/multiquadratic.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace genuslab {

/// Shape of a field among the families that can carry a cyclic class group,
/// read off the prime counts of the three subfield radicands.
enum class FieldForm {
    TwoPrimes,      ///< Q(sqrt p1, sqrt p2): counts {1,1,2}
    PrimeTimesPair, ///< Q(sqrt q, sqrt rs): counts {1,2,3}
    SharedPrime,    ///< Q(sqrt p1p2, sqrt p2p3): counts {2,2,2}
    TwoTimesTwo,    ///< Q(sqrt p1p2, sqrt p3p4): counts {2,2,4}
    ThreeTimesOne,  ///< Q(sqrt p1p2p3, sqrt p4): counts {1,3,4}
    None,
};

std::string_view to_string(FieldForm form);

/// A real biquadratic field Q(sqrt d1, sqrt d2) with odd radicands, stored
/// through its canonical triple: pairwise coprime odd squarefree
/// m1 < m2 < m3 (at most m1 equal to 1) whose pairwise products are the
/// three quadratic subfield radicands. Fields compare equal iff their
/// triples do.
class BiquadraticField {
public:
    /// Throws NotSquarefree, EvenRadicand, DegenerateRadicand (a or b in
    /// {0, 1}), NotTotallyReal (negative input), DegenerateField (a == b) or
    /// Overflow (discriminant beyond 64 bits).
    static BiquadraticField from_radicands(std::int64_t a, std::int64_t b);

    /// Builds the field of a triple given in any order; d1 = m1 m2 and
    /// d2 = m1 m3 after sorting.
    static BiquadraticField from_triple(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3);

    std::int64_t d1() const noexcept { return d1_; }
    std::int64_t d2() const noexcept { return d2_; }
    std::array<std::uint64_t, 3> const & triple() const noexcept { return triple_; }
    int c() const noexcept { return c_; }
    std::uint64_t discriminant() const noexcept { return discriminant_; }
    /// {m1 m2, m1 m3, m2 m3} in increasing order.
    std::array<std::int64_t, 3> const & subfield_radicands() const noexcept { return subfields_; }
    /// Odd primes dividing the discriminant, increasing.
    std::vector<std::uint64_t> const & odd_primes() const noexcept { return primes_; }
    /// Number of distinct primes dividing the discriminant.
    int omega() const noexcept { return static_cast<int>(primes_.size()) + (c_ == 4 ? 1 : 0); }
    /// True when the given radicands d1, d2 share a prime.
    bool shared_prime() const noexcept;

    friend bool operator==(BiquadraticField const & a, BiquadraticField const & b)
    {
        return a.triple_ == b.triple_;
    }

private:
    BiquadraticField() = default;
    static BiquadraticField build(std::int64_t d1, std::int64_t d2, std::array<std::uint64_t, 3> triple);

    std::int64_t d1_ = 0;
    std::int64_t d2_ = 0;
    std::array<std::uint64_t, 3> triple_{};
    int c_ = 1;
    std::uint64_t discriminant_ = 0;
    std::array<std::int64_t, 3> subfields_{};
    std::vector<std::uint64_t> primes_;
};

/// c^2 (m1 m2 m3)^2, checked against the product of the three subfield
/// discriminants; a mismatch raises InternalInconsistency.
std::uint64_t discriminant_of(BiquadraticField const & K);

/// Genus field: p* for every odd p | d1 d2, together with sqrt(-1) unless
/// d1 = d2 = 1 (mod 4).
MultiquadraticField genus_field(BiquadraticField const & K);

/// 2^(omega(disc) - 2), cross-checked against [G(K) : K] from the F2 rank.
std::uint64_t genus_number(BiquadraticField const & K);

/// Maximal totally real subfield L of the genus field; L is contained in the
/// Hilbert class field of K.
MultiquadraticField real_genus_subfield(BiquadraticField const & K);

/// [L : K].
std::uint64_t real_genus_degree_over_k(BiquadraticField const & K);

/// None whenever omega(disc) > 4, otherwise the shape from the subfield
/// prime counts.
FieldForm classify_form(BiquadraticField const & K);

} // namespace genuslab
