#pragma once

#include "genuslab/biquadratic.hpp"
#include "genuslab/quadratic.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace genuslab {

/// a + b sqrt(d) with rational a, b.
struct QuadraticNumber {
    mpq_class a;
    mpq_class b;
    std::int64_t d = 1;

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    QuadraticNumber conjugate() const { return {a, -b, d}; }
    mpq_class norm() const { return a * a - b * b * d; }
    /// Sign of the real embedding with sqrt(d) > 0 (d > 0 only).
    int sign() const;

    friend bool operator==(QuadraticNumber const & x, QuadraticNumber const & y)
    {
        return x.d == y.d && x.a == y.a && x.b == y.b;
    }
};

QuadraticNumber operator+(QuadraticNumber const & x, QuadraticNumber const & y);
QuadraticNumber operator-(QuadraticNumber const & x, QuadraticNumber const & y);
QuadraticNumber operator*(QuadraticNumber const & x, QuadraticNumber const & y);
QuadraticNumber operator*(QuadraticNumber const & x, mpq_class const & r);
QuadraticNumber operator/(QuadraticNumber const & x, QuadraticNumber const & y);

/// Some v in Q(sqrt d) with v^2 = u, if one exists.
std::optional<QuadraticNumber> sqrt_in_field(QuadraticNumber const & u);

/// (p + q sqrt(d)) / denom with denom in {1, 2} and p = q (mod 2) when
/// denom = 2; reduced to denom 1 whenever both p and q are even.
struct QuadraticElement {
    mpz_class p;
    mpz_class q;
    std::int64_t d = 1;
    int denom = 1;

    QuadraticElement() = default;
    QuadraticElement(mpz_class p, mpz_class q, std::int64_t d, int denom = 1);

    QuadraticNumber to_number() const;
    static QuadraticElement from_number(QuadraticNumber const & x);

    friend bool operator==(QuadraticElement const &, QuadraticElement const &) = default;
};

/// Square root inside Q(sqrt d). For d > 0 an element that is not totally
/// positive raises NotTotallyPositive.
std::optional<QuadraticElement> is_square_in_quadratic(QuadraticElement const & u);

/// A + B sqrt(r) with A, B in Q(sqrt s), an element of Q(sqrt s, sqrt r).
struct TowerNumber {
    QuadraticNumber A;
    QuadraticNumber B;
    std::int64_t r = 1;
};

TowerNumber operator*(TowerNumber const & x, TowerNumber const & y);

/// Square root of x inside the tower field, if one exists.
std::optional<TowerNumber> sqrt_in_tower(TowerNumber const & x);

struct UnitIndexResult {
    int Q = 1;
    /// Exponent vectors (a, b, c) with eps1^a eps2^b eps3^c a square in K.
    std::vector<std::array<int, 3>> square_products;
    /// Fundamental units of the subfields, in subfield_radicands() order.
    std::array<FundamentalUnit, 3> units;
};

/// [E_K : E1 E2 E3] from an exact square test of the seven nontrivial
/// products of subfield fundamental units.
UnitIndexResult unit_index(BiquadraticField const & K);

struct BiquadraticClassNumber {
    std::int64_t h = 0;
    std::array<std::int64_t, 3> subfield_h{};
    int Q = 1;
};

/// h_K = h1 h2 h3 Q / 4. Non-integral results, or results not divisible by
/// [L : K], raise InternalInconsistency.
BiquadraticClassNumber class_number_data(BiquadraticField const & K, ClassNumberCache & cache);

std::int64_t class_number_biquadratic(BiquadraticField const & K, ClassNumberCache & cache);
std::int64_t class_number_biquadratic(BiquadraticField const & K);

} // namespace genuslab
