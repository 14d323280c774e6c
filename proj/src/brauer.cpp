#include "genuslab/brauer.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/errors.hpp"

#include <string>

namespace genuslab {

namespace {

std::optional<mpq_class> rational_sqrt(mpq_class const & x)
{
    if (sgn(x) < 0)
        return std::nullopt;
    mpz_class const & num = x.get_num();
    mpz_class const & den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

void require_same_field(QuadraticNumber const & x, QuadraticNumber const & y)
{
    if (x.d != y.d)
        fail(ErrorKind::InvalidArgument,
             "mixed radicands " + std::to_string(x.d) + " and " + std::to_string(y.d));
}

QuadraticNumber rational(mpq_class a, std::int64_t d) { return {std::move(a), 0, d}; }

mpq_class ratio(std::int64_t n, std::int64_t d)
{
    mpq_class q{mpz_class(n), mpz_class(d)};
    q.canonicalize();
    return q;
}

} // namespace

int QuadraticNumber::sign() const
{
    int const sa = sgn(a), sb = sgn(b);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    mpq_class const lhs = a * a, rhs = b * b * d;
    return lhs > rhs ? sa : sb;
}

QuadraticNumber operator+(QuadraticNumber const & x, QuadraticNumber const & y)
{
    require_same_field(x, y);
    return {x.a + y.a, x.b + y.b, x.d};
}

QuadraticNumber operator-(QuadraticNumber const & x, QuadraticNumber const & y)
{
    require_same_field(x, y);
    return {x.a - y.a, x.b - y.b, x.d};
}

QuadraticNumber operator*(QuadraticNumber const & x, QuadraticNumber const & y)
{
    require_same_field(x, y);
    return {x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.d};
}

QuadraticNumber operator*(QuadraticNumber const & x, mpq_class const & r)
{
    return {x.a * r, x.b * r, x.d};
}

QuadraticNumber operator/(QuadraticNumber const & x, QuadraticNumber const & y)
{
    require_same_field(x, y);
    mpq_class const n = y.norm();
    if (sgn(n) == 0)
        fail(ErrorKind::InvalidArgument, "division by zero in quadratic field");
    return (x * y.conjugate()) * mpq_class(1 / n);
}

std::optional<QuadraticNumber> sqrt_in_field(QuadraticNumber const & u)
{
    if (u.is_zero())
        return u;
    if (sgn(u.b) == 0) {
        if (auto r = rational_sqrt(u.a))
            return QuadraticNumber{*r, 0, u.d};
        mpq_class const over_d = u.a / u.d;
        if (auto r = rational_sqrt(over_d))
            return QuadraticNumber{0, *r, u.d};
        return std::nullopt;
    }
    // (p + q sqrt d)^2 = u forces p^2 = (a +- sqrt(N(u))) / 2 and q = b / 2p
    auto const t = rational_sqrt(u.norm());
    if (!t)
        return std::nullopt;
    for (int s : {1, -1}) {
        mpq_class const half = (u.a + s * *t) / 2;
        auto const p = rational_sqrt(half);
        if (!p || sgn(*p) == 0)
            continue;
        mpq_class const q = u.b / (2 * *p);
        QuadraticNumber const v{*p, q, u.d};
        if (v * v == u)
            return v;
    }
    return std::nullopt;
}

QuadraticElement::QuadraticElement(mpz_class p_, mpz_class q_, std::int64_t d_, int denom_)
    : p(std::move(p_)), q(std::move(q_)), d(d_), denom(denom_)
{
    if (denom != 1 && denom != 2)
        fail(ErrorKind::InvalidArgument, "denominator must be 1 or 2");
    if (denom == 2) {
        bool const p_odd = mpz_odd_p(p.get_mpz_t()) != 0, q_odd = mpz_odd_p(q.get_mpz_t()) != 0;
        if (p_odd != q_odd)
            fail(ErrorKind::InvalidArgument, "half-integral element needs p = q (mod 2)");
        if (!p_odd) {
            p /= 2;
            q /= 2;
            denom = 1;
        }
    }
}

QuadraticNumber QuadraticElement::to_number() const
{
    mpq_class a(p, denom), b(q, denom);
    a.canonicalize();
    b.canonicalize();
    return {a, b, d};
}

QuadraticElement QuadraticElement::from_number(QuadraticNumber const & x)
{
    mpq_class const a2 = x.a * 2, b2 = x.b * 2;
    if (a2.get_den() != 1 || b2.get_den() != 1)
        fail(ErrorKind::InternalInconsistency, "square root is not integral");
    return QuadraticElement(a2.get_num(), b2.get_num(), x.d, 2);
}

std::optional<QuadraticElement> is_square_in_quadratic(QuadraticElement const & u)
{
    QuadraticNumber const x = u.to_number();
    if (u.d > 0 && !x.is_zero() && (x.sign() <= 0 || x.conjugate().sign() <= 0))
        fail(ErrorKind::NotTotallyPositive, "element is not totally positive");
    // norms of squares are rational squares
    if (!rational_sqrt(x.norm()))
        return std::nullopt;
    auto const root = sqrt_in_field(x);
    if (!root)
        return std::nullopt;
    QuadraticNumber v = *root;
    if (u.d > 0 && v.sign() < 0)
        v = v * mpq_class(-1);
    return QuadraticElement::from_number(v);
}

TowerNumber operator*(TowerNumber const & x, TowerNumber const & y)
{
    if (x.r != y.r)
        fail(ErrorKind::InvalidArgument, "mixed tower radicands");
    QuadraticNumber const r = rational(mpq_class(mpz_class(x.r)), x.A.d);
    return {x.A * y.A + r * x.B * y.B, x.A * y.B + x.B * y.A, x.r};
}

std::optional<TowerNumber> sqrt_in_tower(TowerNumber const & x)
{
    std::int64_t const s = x.A.d;
    QuadraticNumber const zero = rational(0, s);
    if (x.B.is_zero()) {
        if (auto c = sqrt_in_field(x.A))
            return TowerNumber{*c, zero, x.r};
        if (auto e = sqrt_in_field(x.A * ratio(1, x.r)))
            return TowerNumber{zero, *e, x.r};
        return std::nullopt;
    }
    // (C + D sqrt r)^2 = A + B sqrt r gives C^2 = (A +- sqrt(A^2 - r B^2)) / 2, D = B / 2C
    QuadraticNumber const n2 = x.A * x.A - rational(mpq_class(mpz_class(x.r)), s) * x.B * x.B;
    auto const n = sqrt_in_field(n2);
    if (!n)
        return std::nullopt;
    for (int sign : {1, -1}) {
        QuadraticNumber const half = (x.A + *n * mpq_class(sign)) * ratio(1, 2);
        if (half.is_zero())
            continue;
        auto const c = sqrt_in_field(half);
        if (!c)
            continue;
        QuadraticNumber const d = x.B / (*c * mpq_class(2));
        TowerNumber const root{*c, d, x.r};
        TowerNumber const check = root * root;
        if (check.A == x.A && check.B == x.B)
            return root;
    }
    return std::nullopt;
}

UnitIndexResult unit_index(BiquadraticField const & K)
{
    auto const & s = K.subfield_radicands();
    UnitIndexResult result;
    for (std::size_t i = 0; i < 3; ++i) {
        result.units[i] = fundamental_unit(discriminant(s[i]));
        if (result.units[i].radicand != s[i])
            fail(ErrorKind::InternalInconsistency, "unit radicand mismatch");
    }

    // K = Q(sqrt s1)(sqrt s2) and sqrt s3 = sqrt s1 sqrt s2 / g
    std::int64_t const base = s[0], r = s[1];
    auto const g = static_cast<std::int64_t>(gcd(static_cast<std::uint64_t>(s[0]), static_cast<std::uint64_t>(s[1])));
    if (s[2] != (s[0] / g) * (s[1] / g))
        fail(ErrorKind::InternalInconsistency, "subfield radicands do not close up");

    auto const coeff = [](mpz_class const & v, int scale, std::int64_t extra = 1) {
        mpq_class q(v, mpz_class(scale) * extra);
        q.canonicalize();
        return q;
    };
    auto const & e1 = result.units[0];
    auto const & e2 = result.units[1];
    auto const & e3 = result.units[2];
    std::array<TowerNumber, 3> const eps{
        TowerNumber{{coeff(e1.x, e1.scale), coeff(e1.y, e1.scale), base}, rational(0, base), r},
        TowerNumber{rational(coeff(e2.x, e2.scale), base), rational(coeff(e2.y, e2.scale), base), r},
        TowerNumber{rational(coeff(e3.x, e3.scale), base), {0, coeff(e3.y, e3.scale, g), base}, r},
    };
    std::array<int, 3> const norms{e1.norm, e2.norm, e3.norm};

    for (int mask = 1; mask < 8; ++mask) {
        std::array<int, 3> const exps{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
        // sign at the embedding (sqrt s1, sqrt s2) -> (e1 sqrt s1, e2 sqrt s2); a unit
        // maps to its conjugate, of sign N(eps), when its own radical flips
        bool totally_positive = true;
        for (int f1 : {1, -1})
            for (int f2 : {1, -1}) {
                std::array<int, 3> const flips{f1, f2, f1 * f2};
                int sign = 1;
                for (std::size_t i = 0; i < 3; ++i)
                    if (exps[i] && flips[i] < 0)
                        sign *= norms[i];
                totally_positive = totally_positive && sign > 0;
            }
        if (!totally_positive)
            continue;
        TowerNumber u{rational(1, base), rational(0, base), r};
        for (std::size_t i = 0; i < 3; ++i)
            if (exps[i])
                u = u * eps[i];
        if (sqrt_in_tower(u))
            result.square_products.push_back(exps);
    }
    result.Q = 1 + static_cast<int>(result.square_products.size());
    if (result.Q != 1 && result.Q != 2 && result.Q != 4 && result.Q != 8)
        fail(ErrorKind::InternalInconsistency,
             "square products do not form a subgroup (" + std::to_string(result.Q - 1) + " found)");
    return result;
}

BiquadraticClassNumber class_number_data(BiquadraticField const & K, ClassNumberCache & cache)
{
    BiquadraticClassNumber out;
    for (std::size_t i = 0; i < 3; ++i)
        out.subfield_h[i] = cache.get(discriminant(K.subfield_radicands()[i]));
    out.Q = unit_index(K).Q;
    std::int64_t const numerator = out.subfield_h[0] * out.subfield_h[1] * out.subfield_h[2] * out.Q;
    if (numerator % 4 != 0)
        fail(ErrorKind::InternalInconsistency,
             "h1 h2 h3 Q = " + std::to_string(numerator) + " is not divisible by 4");
    out.h = numerator / 4;
    auto const lk = static_cast<std::int64_t>(real_genus_degree_over_k(K));
    if (out.h <= 0 || out.h % lk != 0)
        fail(ErrorKind::InternalInconsistency,
             "h_K = " + std::to_string(out.h) + " is not a multiple of [L:K] = " + std::to_string(lk));
    return out;
}

std::int64_t class_number_biquadratic(BiquadraticField const & K, ClassNumberCache & cache)
{
    return class_number_data(K, cache).h;
}

std::int64_t class_number_biquadratic(BiquadraticField const & K)
{
    return class_number_biquadratic(K, default_class_number_cache());
}

} // namespace genuslab
