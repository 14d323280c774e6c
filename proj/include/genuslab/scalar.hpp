#pragma once

#include <quadmath.h>

#include <cmath>
#include <gmpxx.h>

namespace genuslab::scalar {

// Uniform spelling of the few transcendental functions the analytic
// routines need, for long double and binary128.

inline long double sin(long double x) { return std::sin(x); }
inline long double log(long double x) { return std::log(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline long double abs(long double x) { return std::fabs(x); }
inline long double round(long double x) { return std::round(x); }

inline __float128 sin(__float128 x) { return sinq(x); }
inline __float128 log(__float128 x) { return logq(x); }
inline __float128 sqrt(__float128 x) { return sqrtq(x); }
inline __float128 abs(__float128 x) { return fabsq(x); }
inline __float128 round(__float128 x) { return roundq(x); }

template <class Scalar>
Scalar pi();
template <>
inline long double pi<long double>() { return 3.141592653589793238462643383279502884L; }
template <>
inline __float128 pi<__float128>() { return M_PIq; }

/// Mantissa bits of the scalar type.
template <class Scalar>
constexpr int precision_bits();
template <>
constexpr int precision_bits<long double>() { return 64; }
template <>
constexpr int precision_bits<__float128>() { return 113; }

/// Converts a nonnegative integer below 2^128 exactly (up to rounding of the
/// target type).
template <class Scalar>
Scalar from_mpz(mpz_class const & v)
{
    mpz_class const hi = v >> 64;
    mpz_class const lo = v - (hi << 64);
    unsigned __int128 const bits = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
    return static_cast<Scalar>(bits);
}

/// Natural log of (x + y*sqrt(m)) for nonnegative x, y with a positive sum.
template <class Scalar>
Scalar log_of_surd(mpz_class const & x, mpz_class const & y, long m)
{
    std::size_t const bits = std::max(mpz_sizeinbase(x.get_mpz_t(), 2), mpz_sizeinbase(y.get_mpz_t(), 2));
    std::size_t const shift = bits > 110 ? bits - 110 : 0;
    Scalar const xs = from_mpz<Scalar>(x >> shift);
    Scalar const ys = from_mpz<Scalar>(y >> shift);
    Scalar const value = xs + ys * scalar::sqrt(static_cast<Scalar>(m));
    return scalar::log(value) + static_cast<Scalar>(shift) * scalar::log(static_cast<Scalar>(2));
}

/// Kahan-compensated accumulator.
template <class Scalar>
class CompensatedSum {
public:
    void add(Scalar v)
    {
        Scalar const y = v - carry_;
        Scalar const t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    Scalar value() const { return sum_; }

private:
    Scalar sum_ = 0;
    Scalar carry_ = 0;
};

} // namespace genuslab::scalar
