#include "ppc/report.hpp"

#include "ppc/io.hpp"

namespace ppc {

DiagnosticReport::DiagnosticReport(const std::string& subcommand, std::uint64_t seed) {
    doc_["schema_version"] = kReportSchemaVersion;
    doc_["tool_version"] = kToolVersion;
    doc_["subcommand"] = subcommand;
    doc_["seed"] = seed;
    doc_["inputs"] = Json::object();
    doc_["checks"] = Json::array();
    doc_["recommendation"] = "";
    doc_["all_passed"] = true;
}

void DiagnosticReport::add_input(const std::string& role, const std::string& path) {
    doc_["inputs"][role] = {{"path", path}, {"digest", file_digest(path)}};
}

void DiagnosticReport::add_check(Json check) {
    if (check.contains("pass") && !check["pass"].get<bool>()) {
        all_passed_ = false;
        doc_["all_passed"] = false;
    }
    doc_["checks"].push_back(std::move(check));
}

void DiagnosticReport::set_recommendation(const std::string& text) {
    doc_["recommendation"] = text;
}

void DiagnosticReport::set(const std::string& key, Json value) { doc_[key] = std::move(value); }

std::string DiagnosticReport::serialize() const { return doc_.dump(2) + "\n"; }

void DiagnosticReport::write(const std::string& path) const { atomic_write_file(path, serialize()); }

Json verdict_json(const GofVerdict& verdict) {
    Json j;
    j["pass"] = verdict.pass;
    j["alpha"] = verdict.bands.alpha;
    j["gamma"] = verdict.bands.gamma;
    j["k_points"] = verdict.bands.k_points;
    j["n"] = verdict.ecdf.n;
    if (verdict.first_exit) {
        j["first_exit"] = {{"z", verdict.first_exit->z},
                           {"side", verdict.first_exit->above ? "above" : "below"}};
    } else {
        j["first_exit"] = nullptr;
    }
    return j;
}

Json diagnosis_json(const DataDiagnosis& diagnosis) {
    Json j;
    j["n_unique"] = diagnosis.n_unique;
    j["max_rel_freq"] = diagnosis.max_rel_freq;
    j["discrete_flag"] = diagnosis.discrete_flag;
    j["point_mass_values"] = diagnosis.point_mass_values;
    j["left_bound"] = diagnosis.left_bound ? Json(*diagnosis.left_bound) : Json(nullptr);
    j["right_bound"] = diagnosis.right_bound ? Json(*diagnosis.right_bound) : Json(nullptr);
    return j;
}

}  // namespace ppc
