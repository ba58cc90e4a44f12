#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "ppc/detect.hpp"
#include "ppc/uniformity.hpp"

namespace ppc {

// Insertion-ordered JSON so serialization is stable across runs.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// Accumulates one CLI run's diagnostics. Serialization is byte-stable for
// identical inputs and seed.
class DiagnosticReport {
  public:
    DiagnosticReport(const std::string& subcommand, std::uint64_t seed);

    // Records the content digest of an input file under its role name.
    void add_input(const std::string& role, const std::string& path);
    void add_check(Json check);
    void set_recommendation(const std::string& text);
    void set(const std::string& key, Json value);

    bool all_passed() const { return all_passed_; }
    Json json() const { return doc_; }
    std::string serialize() const;
    void write(const std::string& path) const;

  private:
    Json doc_;
    bool all_passed_ = true;
};

Json verdict_json(const GofVerdict& verdict);
Json diagnosis_json(const DataDiagnosis& diagnosis);

}  // namespace ppc
