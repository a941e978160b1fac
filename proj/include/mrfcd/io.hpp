#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrfcd/ensembles.hpp"
#include "mrfcd/lecam.hpp"
#include "mrfcd/risk.hpp"
#include "mrfcd/samples.hpp"

namespace mrfcd {

using Json = nlohmann::json;

// Models use 1-based node indices on the wire.
Json to_json(const IsingModel& model);            // {p, edges: [[i, j, w], ...]}
Json to_json(const GaussianModel& model);         // {p, precision: row-major}
Json to_json(const ChangeEnsemble& e);            // {kind, params, null_model, alternatives}
Json to_json(const BoundReport& report);
Json to_json(const RiskReport& report, bool include_curve = false);

IsingModel ising_model_from_json(const Json& j);
GaussianModel gaussian_model_from_json(const Json& j);
ChangeEnsemble ensemble_from_json(const Json& j);
BoundReport bound_report_from_json(const Json& j);

/// Shortest-round-trip is not required; 17 significant digits always round-trips.
std::string format_real(double v);
double parse_real(const std::string& text);

/// One row per sample: +-1 integers for spin sets, 17-significant-digit reals otherwise.
std::string samples_to_csv(const SampleSet& xs);
SampleSet samples_from_csv(const std::string& text, ValueKind kind);

inline constexpr const char* kRiskCsvHeader = "kind,p,d,lambda,n,trials,seed,risk,se,lower_bound,log_tau_opt";
std::string risk_csv_row(const RiskReport& report);
std::string risk_reports_to_csv(const std::vector<RiskReport>& reports);
std::vector<RiskReport> risk_reports_from_csv(const std::string& text);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace mrfcd
