#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mrfcd/ensembles.hpp"

namespace mrfcd {

// ---- closed-form second moments E_{P^n}[L_n^2] ----

/// 1 + ((1 + tanh^2 lambda)^n - 1) / C(p, 2)
double chi2_ising_single_edge(long n, int p, double lambda);

struct GaussianChi2 {
  double bound;  // (1/C(p,2)) ((2p - 3) a^n + C(p-2, 2)),  a = (1 - l^2)/sqrt(1 - 4 l^2)
  double exact;  // three-term count over pair overlaps
};
GaussianChi2 chi2_gaussian_single_edge(long n, int p, double lambda);
/// Upper bound only.
double chi2_gaussian_single_edge_bound(long n, int p, double lambda);

/// 1 + (h - 1) / floor(p / (d + 1))
double chi2_lift(double h, int p, int d);

struct CliqueChi2 {
  double bound;  // lemma2_bound(d, lambda)^n
  double exact;  // lemma2_exact_V(d, lambda)^n
};
/// Single-clique (r = 1) second moment; requires d >= 4 and lambda (d - 3) >= ln d.
CliqueChi2 chi2_ising_clique_bound(long n, int d, double lambda);

/// 1 - sqrt(chi2 - 1) / 2, unfloored.
double risk_lower_bound(double chi2);

// ---- sample-size thresholds ----

enum class ThresholdKind { ising_easy, ising_clique, gaussian };
enum class ReliabilityMode { change_detection, structure_learning };

std::string to_string(ThresholdKind kind);
ThresholdKind threshold_kind_from_string(const std::string& name);
std::string to_string(ReliabilityMode mode);
ReliabilityMode reliability_mode_from_string(const std::string& name);

struct ThresholdParams {
  int p = 0;
  int d = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool operator==(const ThresholdParams&) const = default;
};

/// Right-hand side of the necessary condition min(n1, n2) > threshold:
///   ising-easy:   log(1 + 4(1-delta)^2 C(p,2)) / log(1 + tanh^2 alpha)
///   ising-clique: e^{2 beta d} ln(1 + 4(1-delta)^2 floor(p/(d+1))) / (8(e^{4 beta} + d))
///   gaussian:     log(1 + (1-delta)^2 p) / (2 gamma^2)
/// +inf when the rate denominator vanishes. Structure-learning mode evaluates
/// at reliability 2 delta.
double sample_threshold(ThresholdKind kind, const ThresholdParams& params, double delta,
                        ReliabilityMode mode = ReliabilityMode::change_detection);

// ---- bound reports ----

struct BoundReport {
  ThresholdKind kind = ThresholdKind::ising_easy;
  ThresholdParams params;
  double delta = 0.0;
  ReliabilityMode mode = ReliabilityMode::change_detection;
  long n = 0;           // sample size at which chi2 and the risk bound are evaluated
  double lambda = 0.0;  // edge weight of the ensemble behind the bound
  double chi2 = 1.0;
  double risk_lower_bound = 1.0;  // raw, may be negative
  double n_threshold = 0.0;       // may be +inf

  double risk_lower_bound_floored() const { return risk_lower_bound < 0.0 ? 0.0 : risk_lower_bound; }
  bool operator==(const BoundReport&) const = default;
};

/// Evaluates the threshold and the chi2 / risk bound of the ensemble behind
/// it at n (default: floor of the threshold, or 0 if the threshold is infinite).
BoundReport evaluate_bound(ThresholdKind kind, const ThresholdParams& params, double delta,
                           ReliabilityMode mode = ReliabilityMode::change_detection,
                           std::optional<long> n = std::nullopt);

// ---- oracles ----

inline constexpr int kJointEnumerationCap = 18;  // p * n

struct ExactMoments {
  double chi2;      // E_{P^n}[L_n^2], summed in linear space
  double log_chi2;  // same, summed in log space
  double tv;        // d_TV(P^n, mixture of Q^n)
};
/// Enumerates all (2^p)^n joint outcomes. Ising ensembles only, p * n <= 18.
ExactMoments exact_moments(const ChangeEnsemble& e, long n);
double chi2_exact(const ChangeEnsemble& e, long n);
double tv_exact(const ChangeEnsemble& e, long n);

struct McEstimate {
  double estimate;
  double std_error;
};
/// Mean and standard error of L_n^2 over null-sampled datasets. Trial t uses
/// the Philox stream (seed, 2t), so the result is independent of `threads`.
McEstimate chi2_monte_carlo(const ChangeEnsemble& e, long n, std::size_t trials, std::uint64_t seed,
                            unsigned threads = 0);

/// Population E[L_n^2] of a built-in ensemble from its closed form (exact
/// variants: lifted exact V for cliques, three-term value for Gaussians);
/// enumeration for custom Ising ensembles within cap; nullopt otherwise.
std::optional<double> chi2_population(const ChangeEnsemble& e, long n);

}  // namespace mrfcd
