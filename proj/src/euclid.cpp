#include "genuslab/euclid.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/brauer.hpp"
#include "genuslab/errors.hpp"

namespace genuslab {

std::string_view to_string(VerdictStatus status)
{
    switch (status) {
    case VerdictStatus::Exists: return "Exists";
    case VerdictStatus::NoNonCyclic: return "NoNonCyclic";
    case VerdictStatus::OutsideTheorem: return "OutsideTheorem";
    }
    return "OutsideTheorem";
}

bool hilbert_abelian(BiquadraticField const & K, std::int64_t h_K)
{
    return h_K == static_cast<std::int64_t>(real_genus_degree_over_k(K));
}

bool hilbert_abelian(BiquadraticField const & K, ClassNumberCache & cache)
{
    return hilbert_abelian(K, class_number_biquadratic(K, cache));
}

bool exceptional_pattern(BiquadraticField const & K)
{
    if (classify_form(K) != FieldForm::PrimeTimesPair)
        fail(ErrorKind::ShapeMismatch, "field is not of the form Q(sqrt q, sqrt rs)");
    // subfield radicands are q, rs and qrs; the prime one is q
    for (std::int64_t m : K.subfield_radicands()) {
        auto const f = factor_squarefree(m);
        if (f.omega() != 1)
            continue;
        if (m % 4 != 1)
            return false;
        for (std::uint64_t p : K.odd_primes())
            if (static_cast<std::int64_t>(p) != m && p % 4 != 3)
                return false;
        return true;
    }
    fail(ErrorKind::InternalInconsistency, "no prime subfield radicand in a Q(sqrt q, sqrt rs) field");
}

Verdict euclidean_verdict(BiquadraticField const & K, ClassNumberCache & cache)
{
    if (K.d1() <= 0 || K.d2() <= 0)
        fail(ErrorKind::NotTotallyReal, "radicands must be positive");
    if (K.d1() % 2 == 0 || K.d2() % 2 == 0)
        fail(ErrorKind::EvenRadicand, "radicands must be odd");

    Verdict v;
    v.omega = K.omega();
    if (v.omega > 4) {
        v.status = VerdictStatus::NoNonCyclic;
        v.reasons.emplace_back(reason::omega_gt_4);
        return v;
    }

    std::int64_t const h = class_number_biquadratic(K, cache);
    bool const abelian = hilbert_abelian(K, h);
    v.h_K = h;
    v.hilbert_abelian = abelian;
    if (classify_form(K) == FieldForm::PrimeTimesPair)
        v.exceptional_pattern = exceptional_pattern(K);

    if (abelian) {
        // H(K) = L has index 1 or 2 in the genus field according to its signature
        auto const g = static_cast<std::int64_t>(genus_number(K));
        std::int64_t const expected = genus_field(K).totally_real() ? g : g / 2;
        if (h != expected)
            fail(ErrorKind::InternalInconsistency, "abelian Hilbert class field with h_K != [L:K]");
        if (h <= 2) {
            v.status = VerdictStatus::Exists;
            v.reasons.emplace_back(h == 1 ? reason::class_number_one : reason::abelian_cyclic);
        } else {
            v.status = VerdictStatus::NoNonCyclic;
            v.reasons.emplace_back(reason::abelian_noncyclic);
        }
    } else {
        v.status = VerdictStatus::OutsideTheorem;
        v.reasons.emplace_back(reason::hilbert_nonabelian);
        if (v.exceptional_pattern.value_or(false))
            v.reasons.emplace_back(reason::d8_obstruction);
    }

    if (v.status == VerdictStatus::Exists && (v.omega > 4 || h > 2))
        fail(ErrorKind::InternalInconsistency, "Exists verdict outside omega <= 4, h_K <= 2");
    return v;
}

Verdict euclidean_verdict(BiquadraticField const & K)
{
    return euclidean_verdict(K, default_class_number_cache());
}

} // namespace genuslab
