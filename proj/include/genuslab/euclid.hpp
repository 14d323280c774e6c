#pragma once

#include "genuslab/biquadratic.hpp"
#include "genuslab/quadratic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace genuslab {

enum class VerdictStatus { Exists, NoNonCyclic, OutsideTheorem };

std::string_view to_string(VerdictStatus status);

namespace reason {
inline constexpr std::string_view omega_gt_4 = "omega_gt_4";
inline constexpr std::string_view class_number_one = "class_number_one";
inline constexpr std::string_view abelian_cyclic = "abelian_cyclic";
inline constexpr std::string_view abelian_noncyclic = "abelian_noncyclic";
inline constexpr std::string_view hilbert_nonabelian = "hilbert_nonabelian";
inline constexpr std::string_view d8_obstruction = "d8_obstruction";
} // namespace reason

struct Verdict {
    VerdictStatus status = VerdictStatus::OutsideTheorem;
    std::vector<std::string> reasons;
    std::optional<std::int64_t> h_K;
    std::optional<bool> hilbert_abelian;
    std::optional<bool> exceptional_pattern;
    int omega = 0;
};

/// H(K)/Q is abelian iff h_K = [L : K].
bool hilbert_abelian(BiquadraticField const & K, std::int64_t h_K);
bool hilbert_abelian(BiquadraticField const & K, ClassNumberCache & cache);

/// For K = Q(sqrt q, sqrt rs): q = 1 and r = s = 3 (mod 4) for some choice of
/// the prime subfield radicand q. Other shapes raise ShapeMismatch.
bool exceptional_pattern(BiquadraticField const & K);

/// Decision cascade: omega > 4, then abelian with h_K <= 2, abelian with
/// h_K > 2, and finally the non-abelian case, which is left undecided.
Verdict euclidean_verdict(BiquadraticField const & K, ClassNumberCache & cache);
Verdict euclidean_verdict(BiquadraticField const & K);

} // namespace genuslab
