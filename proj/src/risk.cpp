#include "mrfcd/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrfcd/error.hpp"
#include "mrfcd/lecam.hpp"
#include "mrfcd/likelihood.hpp"
#include "mrfcd/logmath.hpp"
#include "mrfcd/sampling.hpp"

namespace mrfcd {
namespace {

double binomial_se(double a, double b, std::size_t trials) {
  const double m = static_cast<double>(trials);
  return std::sqrt(a * (1.0 - a) / m + b * (1.0 - b) / m);
}

}  // namespace

RiskReport sweep_thresholds(std::vector<double> null_lr, std::vector<double> alt_lr) {
  require(!null_lr.empty() && !alt_lr.empty(), "threshold sweep needs observations under both hypotheses");
  std::sort(null_lr.begin(), null_lr.end());
  std::sort(alt_lr.begin(), alt_lr.end());
  std::vector<double> candidates;
  candidates.reserve(null_lr.size() + alt_lr.size() + 2);
  candidates.push_back(kNegInf);
  std::merge(null_lr.begin(), null_lr.end(), alt_lr.begin(), alt_lr.end(), std::back_inserter(candidates));
  candidates.push_back(kInf);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const double n0 = static_cast<double>(null_lr.size());
  const double n1 = static_cast<double>(alt_lr.size());
  RiskReport report;
  report.curve.reserve(candidates.size());
  report.risk = std::numeric_limits<double>::infinity();
  for (double tau : candidates) {
    // Reject H0 iff lr >= tau.
    const auto rejected_null = null_lr.end() - std::lower_bound(null_lr.begin(), null_lr.end(), tau);
    const auto accepted_alt = std::lower_bound(alt_lr.begin(), alt_lr.end(), tau) - alt_lr.begin();
    const double type1 = static_cast<double>(rejected_null) / n0;
    const double type2 = static_cast<double>(accepted_alt) / n1;
    report.curve.push_back({tau, type1, type2});
    if (type1 + type2 < report.risk) {
      report.risk = type1 + type2;
      report.log_tau_opt = tau;
      report.std_error = std::sqrt(type1 * (1.0 - type1) / n0 + type2 * (1.0 - type2) / n1);
    }
  }
  report.trials = null_lr.size();
  return report;
}

RiskReport simulate_risk(const ChangeEnsemble& e, long n, std::size_t trials, std::uint64_t seed, unsigned threads) {
  require(n >= 0, "sample size must be nonnegative");
  require(trials >= 100, "simulate_risk needs at least 100 trials");
  const EnsembleSampler sampler(e);
  const LikelihoodRatio ratio(e);
  const auto size = static_cast<std::size_t>(n);
  std::vector<double> null_lr(trials), alt_lr(trials);
  parallel_for(trials, resolve_threads(threads), [&](std::size_t t) {
    Philox4x32 null_rng(seed, null_stream(t));
    null_lr[t] = ratio(sampler.null(size, null_rng)).value;
    Philox4x32 alt_rng(seed, alternative_stream(t));
    const auto k = static_cast<std::size_t>(alt_rng.below(sampler.alternatives()));
    alt_lr[t] = ratio(sampler.alternative(k, size, alt_rng)).value;
  });
  RiskReport report = sweep_thresholds(std::move(null_lr), std::move(alt_lr));
  report.kind = e.kind;
  report.params = e.params;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  const auto chi2 = chi2_population(e, n);
  report.lower_bound = chi2 ? std::max(0.0, risk_lower_bound(*chi2)) : std::numeric_limits<double>::quiet_NaN();
  return report;
}

std::vector<double> nonincreasing_fit(const std::vector<double>& values) {
  struct Block {
    double sum;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1) {
      const Block& last = blocks.back();
      const Block& prev = blocks[blocks.size() - 2];
      if (prev.sum / static_cast<double>(prev.count) >= last.sum / static_cast<double>(last.count)) break;
      const Block merged{prev.sum + last.sum, prev.count + last.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) out.insert(out.end(), b.count, b.sum / static_cast<double>(b.count));
  return out;
}

RiskSweep risk_vs_n_sweep(const ChangeEnsemble& e, const std::vector<long>& n_list, std::size_t trials,
                          std::uint64_t seed, unsigned threads) {
  require(!n_list.empty(), "sweep needs at least one sample size");
  RiskSweep sweep;
  for (std::size_t k = 0; k < n_list.size(); ++k)
    sweep.raw.push_back(simulate_risk(e, n_list[k], trials, derive_seed(seed, k), threads));
  std::vector<double> risks;
  for (const auto& r : sweep.raw) risks.push_back(r.risk);
  const auto fitted = nonincreasing_fit(risks);
  sweep.smoothed = sweep.raw;
  for (std::size_t k = 0; k < fitted.size(); ++k) {
    sweep.smoothed[k].risk = fitted[k];
    sweep.smoothed[k].curve.clear();
  }
  return sweep;
}

namespace {

// Sufficient statistic for exact likelihoods: counts of each of the 2^p states.
std::vector<double> state_counts(const SampleSet& xs) {
  std::vector<double> counts(std::size_t{1} << xs.p(), 0.0);
  for (std::size_t t = 0; t < xs.n(); ++t) {
    std::size_t s = 0;
    for (std::size_t k = 0; k < xs.p(); ++k)
      if (xs.at(t, k) < 0) s |= std::size_t{1} << k;
    counts[s] += 1.0;
  }
  return counts;
}

struct CandidateGraph {
  std::vector<std::pair<int, int>> edges;
};

std::vector<CandidateGraph> degree_bounded_graphs(int p, int d) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
  std::vector<CandidateGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    CandidateGraph g;
    std::vector<int> deg(static_cast<std::size_t>(p), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!((mask >> k) & 1u)) continue;
      g.edges.push_back(pairs[k]);
      ++deg[static_cast<std::size_t>(pairs[k].first)];
      ++deg[static_cast<std::size_t>(pairs[k].second)];
    }
    if (*std::max_element(deg.begin(), deg.end()) <= d) out.push_back(std::move(g));
  }
  // Fewer edges first, then lexicographic, so the first maximizer wins ties.
  std::sort(out.begin(), out.end(), [](const CandidateGraph& a, const CandidateGraph& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  });
  return out;
}

double best_log_likelihood(const CandidateGraph& g, const std::vector<double>& counts, double n, int p,
                           const std::vector<double>& grid) {
  const std::size_t states = counts.size();
  const std::size_t k = g.edges.size();
  // x_i x_j for every state and edge.
  std::vector<double> products(states * std::max<std::size_t>(k, 1));
  for (std::size_t s = 0; s < states; ++s)
    for (std::size_t e = 0; e < k; ++e) {
      const bool differ = ((s >> g.edges[e].first) ^ (s >> g.edges[e].second)) & 1u;
      products[s * k + e] = differ ? -1.0 : 1.0;
    }
  if (k == 0) return -n * p * std::log(2.0);

  std::vector<std::size_t> idx(k, 0);
  std::vector<double> energies(states);
  double best = kNegInf;
  while (true) {
    double fit = 0.0;
    for (std::size_t s = 0; s < states; ++s) {
      double en = 0.0;
      for (std::size_t e = 0; e < k; ++e) en += grid[idx[e]] * products[s * k + e];
      energies[s] = en;
      fit += counts[s] * en;
    }
    best = std::max(best, fit - n * log_sum_exp(energies));
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == grid.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  return best;
}

}  // namespace

std::vector<std::pair<int, int>> ml_structure_estimate(const SampleSet& xs, const MlDetectorParams& params) {
  require(params.p >= 2 && params.p <= kMlDetectorMaxNodes, "ml_structure_detector needs 2 <= p <= 5");
  require(static_cast<int>(xs.p()) == params.p, "sample set width does not match detector p");
  require(xs.kind() == ValueKind::spin, "ml_structure_detector needs spin-valued samples");
  require(!params.weight_grid.empty(), "weight grid must not be empty");
  const auto graphs = degree_bounded_graphs(params.p, params.d);
  double work = 0.0;
  for (const auto& g : graphs) work += std::pow(static_cast<double>(params.weight_grid.size()), g.edges.size());
  require(work * std::ldexp(1.0, params.p) <= 5e8, "weight grid too large for exhaustive search");

  const auto counts = state_counts(xs);
  const double n = static_cast<double>(xs.n());
  const CandidateGraph* winner = nullptr;
  double best = kNegInf;
  for (const auto& g : graphs) {
    const double score = best_log_likelihood(g, counts, n, params.p, params.weight_grid);
    if (winner == nullptr || score > best + 1e-9 * std::max(1.0, std::abs(best))) {
      best = score;
      winner = &g;
    }
  }
  return winner->edges;
}

int ml_structure_detector(const SampleSet& xs1, const SampleSet& xs2, const MlDetectorParams& params) {
  return ml_structure_estimate(xs1, params) == ml_structure_estimate(xs2, params) ? 0 : 1;
}

DetectorComparison compare_np_with_structure_detector(const ChangeEnsemble& e, long n, std::size_t trials,
                                                      std::uint64_t seed, const MlDetectorParams& params,
                                                      unsigned threads) {
  require(e.is_ising(), "detector comparison needs an Ising ensemble");
  require(trials >= 100, "detector comparison needs at least 100 trials");
  const EnsembleSampler sampler(e);
  const LikelihoodRatio ratio(e);
  const auto size = static_cast<std::size_t>(n);
  std::vector<double> null_lr(trials), alt_lr(trials);
  std::vector<int> ml_null(trials), ml_alt(trials);
  parallel_for(trials, resolve_threads(threads), [&](std::size_t t) {
    Philox4x32 null_rng(seed, null_stream(t));
    const SampleSet xs0 = sampler.null(size, null_rng);
    Philox4x32 alt_rng(seed, alternative_stream(t));
    const auto k = static_cast<std::size_t>(alt_rng.below(sampler.alternatives()));
    const SampleSet xs1 = sampler.alternative(k, size, alt_rng);
    Philox4x32 ref_rng(seed, 2 * trials + t);
    const SampleSet reference = sampler.null(size, ref_rng);
    null_lr[t] = ratio(xs0).value;
    alt_lr[t] = ratio(xs1).value;
    ml_null[t] = ml_structure_detector(reference, xs0, params);
    ml_alt[t] = ml_structure_detector(reference, xs1, params);
  });
  const RiskReport np = sweep_thresholds(std::move(null_lr), std::move(alt_lr));
  double false_alarm = 0.0, missed = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    false_alarm += ml_null[t];
    missed += 1 - ml_alt[t];
  }
  false_alarm /= static_cast<double>(trials);
  missed /= static_cast<double>(trials);
  return {np.risk, np.std_error, false_alarm + missed, binomial_se(false_alarm, missed, trials)};
}

}  // namespace mrfcd
