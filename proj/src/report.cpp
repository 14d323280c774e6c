#include "genuslab/report.hpp"

#include "genuslab/brauer.hpp"

#include <iomanip>
#include <sstream>

namespace genuslab {

namespace {

Json optional_json(auto const & v)
{
    return v ? Json(*v) : Json(nullptr);
}

std::string format_real(long double v, int digits = 12)
{
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

void flatten(Json const & j, std::string const & prefix, std::ostringstream & out)
{
    if (j.is_object()) {
        for (auto const & [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    if (j.is_array() && !j.empty() && j.front().is_object()) {
        std::size_t i = 0;
        for (auto const & value : j)
            flatten(value, prefix + "." + std::to_string(i++), out);
        return;
    }
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

} // namespace

Json field_record(BiquadraticField const & K)
{
    auto const G = genus_field(K);
    auto const L = real_genus_subfield(K);
    Json j;
    j["d1"] = K.d1();
    j["d2"] = K.d2();
    j["triple"] = K.triple();
    j["c"] = K.c();
    j["discriminant"] = K.discriminant();
    j["subfields"] = K.subfield_radicands();
    j["genus_generators"] = G.generators();
    j["genus_number"] = genus_number(K);
    j["L_generators"] = L.generators();
    j["form"] = std::string(to_string(classify_form(K)));
    j["shared_prime"] = K.shared_prime();
    return j;
}

Json verdict_json(Verdict const & v)
{
    Json j;
    j["status"] = std::string(to_string(v.status));
    j["h_K"] = optional_json(v.h_K);
    j["omega"] = v.omega;
    j["hilbert_abelian"] = optional_json(v.hilbert_abelian);
    j["exceptional_pattern"] = optional_json(v.exceptional_pattern);
    j["reasons"] = v.reasons;
    return j;
}

Json field_report(BiquadraticField const & K, ClassNumberCache & cache)
{
    Json j = field_record(K);
    j["omega"] = K.omega();
    j["L_degree_over_K"] = real_genus_degree_over_k(K);
    auto const verdict = euclidean_verdict(K, cache);
    if (verdict.h_K) {
        auto const data = class_number_data(K, cache);
        j["subfield_class_numbers"] = data.subfield_h;
        j["unit_index"] = data.Q;
    } else {
        j["subfield_class_numbers"] = nullptr;
        j["unit_index"] = nullptr;
    }
    j["h_K"] = optional_json(verdict.h_K);
    j["verdict"] = verdict_json(verdict);
    return j;
}

Json census_json(CensusReport const & r)
{
    Json j;
    j["X"] = r.X;
    j["total"] = r.total;
    Json omega = Json::object(), genus = Json::object(), decades = Json::object();
    for (auto const & [w, c] : r.by_omega)
        omega[std::to_string(w)] = c;
    for (auto const & [g, c] : r.by_genus)
        genus[std::to_string(g)] = c;
    for (auto const & [k, row] : r.by_decade) {
        Json d = Json::object();
        for (auto const & [w, c] : row)
            d[std::to_string(w)] = c;
        decades[std::to_string(k)] = d;
    }
    j["by_omega"] = omega;
    j["by_genus"] = genus;
    j["euclid_eligible"] = r.euclid_eligible;
    j["by_decade"] = decades;
    j["checked_fields"] = r.checked_fields;
    return j;
}

std::string census_csv_header(int max_omega)
{
    std::string h = "X,total";
    for (int w = 2; w <= max_omega; ++w)
        h += ",omega_" + std::to_string(w);
    return h + ",eligible_fraction";
}

std::string census_csv_row(CensusReport const & r, int max_omega)
{
    std::ostringstream os;
    os << r.X << ',' << r.total;
    for (int w = 2; w <= max_omega; ++w) {
        auto const it = r.by_omega.find(w);
        os << ',' << (it == r.by_omega.end() ? 0 : it->second);
    }
    double const frac = r.total ? static_cast<double>(r.euclid_eligible) / static_cast<double>(r.total) : 0.0;
    os << ',' << std::setprecision(10) << frac;
    return os.str();
}

Json constants_json(ConstantEstimate const & e)
{
    Json j;
    j["prime_bound"] = e.prime_bound;
    j["truncated_product_odd"] = format_real(e.truncated_product);
    j["truncated_product_all"] = format_real(e.truncated_product_all);
    j["tail_bound"] = format_real(e.tail_bound, 6);
    Json c = Json::object();
    for (auto const & cand : e.candidate_A)
        c[cand.label] = format_real(cand.value);
    j["candidate_A"] = c;
    return j;
}

Json coefficients_json(CoefficientExperiment const & e)
{
    Json j;
    j["constant"] = constants_json(e.constant);
    Json rows = Json::array();
    for (auto const & r : e.rows) {
        Json row;
        row["X"] = r.X;
        row["S"] = r.S;
        row["ratio"] = format_real(r.ratio);
        Json rel = Json::object();
        for (std::size_t i = 0; i < r.relative.size(); ++i)
            rel[e.constant.candidate_A[i].label] = format_real(r.relative[i], 6);
        row["ratio_over_candidate"] = rel;
        row["nearest"] = r.nearest;
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["trend_direction"] = e.trend_direction;
    j["fitted_leading"] = e.fitted_leading ? Json(format_real(*e.fitted_leading)) : Json(nullptr);
    j["trend_toward"] = e.trend_toward;
    j["note"] = e.note;
    return j;
}

Json density_json(DensityReport const & d)
{
    Json j;
    j["X"] = d.X;
    j["eligible_fraction"] = d.eligible_fraction;
    Json rows = Json::array();
    for (auto const & r : d.decades) {
        Json row;
        row["decade"] = r.decade;
        row["total"] = r.total;
        row["eligible"] = r.eligible;
        row["eligible_fraction"] = r.eligible_fraction;
        Json omega = Json::object();
        for (auto const & [w, c] : r.by_omega)
            omega[std::to_string(w)] = c;
        row["by_omega"] = omega;
        rows.push_back(row);
    }
    j["decades"] = rows;
    if (d.verdicts) {
        Json v;
        v["bound"] = d.verdicts->bound;
        v["fields"] = d.verdicts->fields;
        Json s = Json::object();
        for (auto const & [k, c] : d.verdicts->by_status)
            s[k] = c;
        v["by_status"] = s;
        j["verdicts"] = v;
    } else {
        j["verdicts"] = nullptr;
    }
    return j;
}

Json selberg_json(SatheSelbergRow const & row)
{
    Json j;
    j["N"] = row.N;
    j["n"] = row.n;
    j["exact"] = row.exact;
    j["main_term"] = row.main_term;
    j["ratio"] = row.ratio;
    return j;
}

std::string render_text(Json const & j)
{
    std::ostringstream out;
    flatten(j, "", out);
    return out.str();
}

} // namespace genuslab
