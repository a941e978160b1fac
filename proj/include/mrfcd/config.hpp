#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrfcd/ensembles.hpp"
#include "mrfcd/io.hpp"
#include "mrfcd/lecam.hpp"

namespace mrfcd {

/// Everything one CLI invocation needs. Built from an optional JSON file
/// with command-line flags layered on top.
struct ExperimentConfig {
  std::string command;  // bound | simulate | sweep | verify | plot
  std::string kind;     // bound kind (bound) or ensemble kind (simulate, sweep)
  int p = 0;
  int d = 0;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> lambda;
  double delta = 0.5;
  std::string mode = "change-detection";
  std::optional<long> n;
  std::vector<long> n_list;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: MRFCD_THREADS or hardware concurrency
  std::string out;       // empty: stdout
  std::vector<std::string> formats;
  std::string suite = "all";
  std::string input;  // plot input file

  bool operator==(const ExperimentConfig&) const = default;
};

Json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const Json& j);

/// Checks the gates of the operations the command will invoke; throws
/// ValidationError before any compute happens.
void validate(const ExperimentConfig& cfg);

/// Edge weight for an ensemble command: --lambda if given, else alpha
/// (ising-single-edge), beta (ising-clique) or gamma (gaussian-single-edge).
double ensemble_lambda(const ExperimentConfig& cfg);
ChangeEnsemble build_ensemble(const ExperimentConfig& cfg);
ThresholdParams threshold_params(const ExperimentConfig& cfg);

}  // namespace mrfcd
