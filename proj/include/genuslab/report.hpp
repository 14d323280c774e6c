#pragma once

#include "genuslab/biquadratic.hpp"
#include "genuslab/census.hpp"
#include "genuslab/euclid.hpp"
#include "genuslab/quadratic.hpp"

#include <json.hpp>

#include <string>

namespace genuslab {

using Json = nlohmann::ordered_json;

/// Keys: d1, d2, triple, c, discriminant, subfields, genus_generators,
/// genus_number, L_generators, form, shared_prime.
Json field_record(BiquadraticField const & K);

/// {status, h_K, omega, hilbert_abelian, exceptional_pattern, reasons}
Json verdict_json(Verdict const & v);

/// Field record followed by omega, subfield class numbers, unit index, h_K
/// and the verdict.
Json field_report(BiquadraticField const & K, ClassNumberCache & cache);

Json census_json(CensusReport const & r);

/// Header X,total,omega_2,...,omega_<max_omega>,eligible_fraction.
std::string census_csv_header(int max_omega);
std::string census_csv_row(CensusReport const & r, int max_omega);

Json constants_json(ConstantEstimate const & e);
Json coefficients_json(CoefficientExperiment const & e);
Json density_json(DensityReport const & d);
Json selberg_json(SatheSelbergRow const & row);

/// One "key: value" line per leaf, nested keys joined with '.'.
std::string render_text(Json const & j);

} // namespace genuslab
