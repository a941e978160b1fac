#pragma once

#include <cstdint>
#include <vector>

#include "mrfcd/ensembles.hpp"
#include "mrfcd/samples.hpp"

namespace mrfcd {

struct RiskCurvePoint {
  double log_tau;
  double type1;
  double type2;
  bool operator==(const RiskCurvePoint&) const = default;
};

/// Empirical optimal average risk of the likelihood-ratio test on an ensemble.
///
/// The optimum is taken over thresholds swept on the same draws that measure
/// the error rates, which biases it downward by roughly sqrt(log(trials)/trials).
struct RiskReport {
  EnsembleKind kind = EnsembleKind::ising_single_edge;
  EnsembleParams params;
  long n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double risk = 1.0;         // min over the curve of type1 + type2
  double std_error = 0.0;    // binomial approximation at the optimum
  double lower_bound = 0.0;  // max(0, 1 - sqrt(E[L^2] - 1)/2); NaN if unavailable
  double log_tau_opt = 0.0;
  std::vector<RiskCurvePoint> curve;  // empty when read back from CSV

  bool operator==(const RiskReport&) const = default;
};

/// Evaluates the swept risk curve for given null / alternative log-ratios.
/// Candidate thresholds are -inf, every observed value and +inf; the smallest
/// threshold achieving the minimum is reported.
RiskReport sweep_thresholds(std::vector<double> null_lr, std::vector<double> alt_lr);

/// Trial t draws its null dataset from stream (seed, 2t) and picks the
/// alternative uniformly, then draws its dataset, from stream (seed, 2t + 1).
RiskReport simulate_risk(const ChangeEnsemble& e, long n, std::size_t trials, std::uint64_t seed,
                         unsigned threads = 0);

struct RiskSweep {
  std::vector<RiskReport> raw;
  std::vector<RiskReport> smoothed;  // risk replaced by its nonincreasing isotonic fit in n
};

/// simulate_risk over n_list with seeds derive_seed(seed, k).
RiskSweep risk_vs_n_sweep(const ChangeEnsemble& e, const std::vector<long>& n_list, std::size_t trials,
                          std::uint64_t seed, unsigned threads = 0);

/// Pool-adjacent-violators fit of a nonincreasing sequence (unit weights).
std::vector<double> nonincreasing_fit(const std::vector<double>& values);

struct MlDetectorParams {
  int p = 3;
  int d = 2;
  std::vector<double> weight_grid{-2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0};
};

inline constexpr int kMlDetectorMaxNodes = 5;

/// Naive structure-learning change detector: for each dataset, picks the graph
/// in G_{p,d} maximizing the exact log-likelihood over per-edge weights from
/// the grid (ties: fewer edges, then lexicographically smaller edge list), and
/// reports 1 iff the two selected edge sets differ.
int ml_structure_detector(const SampleSet& xs1, const SampleSet& xs2, const MlDetectorParams& params);

/// Selected graph of a single dataset, as used by ml_structure_detector.
std::vector<std::pair<int, int>> ml_structure_estimate(const SampleSet& xs, const MlDetectorParams& params);

struct DetectorComparison {
  double np_risk;
  double np_std_error;
  double ml_risk;
  double ml_std_error;
};

/// Runs the likelihood-ratio test and ml_structure_detector on the same
/// trials. The detector receives a reference dataset drawn from P (stream
/// (seed, 2 trials + t)) together with the tested dataset.
DetectorComparison compare_np_with_structure_detector(const ChangeEnsemble& e, long n, std::size_t trials,
                                                      std::uint64_t seed, const MlDetectorParams& params,
                                                      unsigned threads = 0);

}  // namespace mrfcd
