#include "mrfcd/lecam.hpp"

#include <cmath>
#include <functional>

#include "mrfcd/error.hpp"
#include "mrfcd/likelihood.hpp"
#include "mrfcd/logmath.hpp"
#include "mrfcd/sampling.hpp"

namespace mrfcd {
namespace {

// Second moments are >= 1 mathematically; rounding may land a hair below.
constexpr double kChi2Slack = 1e-12;

double power(double base, long n) { return std::exp(static_cast<double>(n) * std::log(base)); }

}  // namespace

double chi2_ising_single_edge(long n, int p, double lambda) {
  require(p >= 2, "chi2_ising_single_edge needs p >= 2");
  require(n >= 0, "sample size must be nonnegative");
  const double t = std::tanh(lambda);
  return 1.0 + std::expm1(static_cast<double>(n) * std::log1p(t * t)) / binomial2(p);
}

GaussianChi2 chi2_gaussian_single_edge(long n, int p, double lambda) {
  require(p >= 2, "chi2_gaussian_single_edge needs p >= 2");
  require(n >= 0, "sample size must be nonnegative");
  if (!(std::abs(lambda) < 0.5)) throw ValidationError("gaussian chi2 needs |lambda| < 1/2");
  const double l2 = lambda * lambda;
  const double a = (1.0 - l2) / std::sqrt(1.0 - 4.0 * l2);
  const double b = (1.0 - l2) / std::sqrt(1.0 - 2.0 * l2);
  const double pairs = binomial2(p);
  const double disjoint = binomial2(p - 2);
  const double an = power(a, n);
  return {((2.0 * p - 3.0) * an + disjoint) / pairs, (disjoint + 2.0 * (p - 2) * power(b, n) + an) / pairs};
}

double chi2_gaussian_single_edge_bound(long n, int p, double lambda) {
  return chi2_gaussian_single_edge(n, p, lambda).bound;
}

double chi2_lift(double h, int p, int d) {
  require(d >= 1 && p >= d + 1, "chi2_lift needs d >= 1 and p >= d + 1");
  require(h >= 1.0 - kChi2Slack, "chi2_lift needs h >= 1");
  const int r = p / (d + 1);
  return 1.0 + std::max(h - 1.0, 0.0) / r;
}

CliqueChi2 chi2_ising_clique_bound(long n, int d, double lambda) {
  require(n >= 0, "sample size must be nonnegative");
  const double v_bound = lemma2_bound(d, lambda);
  return {power(v_bound, n), std::exp(static_cast<double>(n) * lemma2_log_exact_V(d, lambda))};
}

double risk_lower_bound(double chi2) {
  require(chi2 >= 1.0 - kChi2Slack, "risk_lower_bound needs chi2 >= 1");
  return 1.0 - 0.5 * std::sqrt(std::max(chi2 - 1.0, 0.0));
}

std::string to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::ising_easy: return "ising-easy";
    case ThresholdKind::ising_clique: return "ising-clique";
    case ThresholdKind::gaussian: return "gaussian";
  }
  return "unknown";
}

ThresholdKind threshold_kind_from_string(const std::string& name) {
  for (auto k : {ThresholdKind::ising_easy, ThresholdKind::ising_clique, ThresholdKind::gaussian})
    if (to_string(k) == name) return k;
  throw ValidationError("unknown bound kind '" + name + "' (expected ising-easy, ising-clique or gaussian)");
}

std::string to_string(ReliabilityMode mode) {
  return mode == ReliabilityMode::change_detection ? "change-detection" : "structure-learning";
}

ReliabilityMode reliability_mode_from_string(const std::string& name) {
  if (name == "change-detection") return ReliabilityMode::change_detection;
  if (name == "structure-learning") return ReliabilityMode::structure_learning;
  throw ValidationError("unknown mode '" + name + "'");
}

double sample_threshold(ThresholdKind kind, const ThresholdParams& params, double delta, ReliabilityMode mode) {
  require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0, 1]");
  if (mode == ReliabilityMode::structure_learning) {
    delta *= 2.0;
    require(delta <= 1.0, "structure-learning mode needs 2 delta <= 1");
  }
  const double slack = (1.0 - delta) * (1.0 - delta);
  switch (kind) {
    case ThresholdKind::ising_easy: {
      require(params.p >= 2, "ising-easy threshold needs p >= 2");
      const double t = std::tanh(params.alpha);
      const double rate = std::log1p(t * t);
      if (rate == 0.0) return kInf;
      return std::log1p(4.0 * slack * binomial2(params.p)) / rate;
    }
    case ThresholdKind::ising_clique: {
      require(params.d >= 1 && params.p >= params.d + 1, "ising-clique threshold needs p >= d + 1");
      if (!lemma2_applicable(params.d, params.beta))
        throw BoundNotApplicable("ising-clique threshold needs d >= 4 and beta (d - 3) >= ln d");
      const double r = params.p / (params.d + 1);
      const double beta = params.beta;
      const int d = params.d;
      return std::exp(2.0 * beta * d) * std::log1p(4.0 * slack * r) / (8.0 * (std::exp(4.0 * beta) + d));
    }
    case ThresholdKind::gaussian: {
      require(params.p >= 1, "gaussian threshold needs p >= 1");
      const double gamma = std::abs(params.gamma);
      if (gamma > 0.39) throw BoundNotApplicable("gaussian threshold needs gamma <= 0.39");
      if (gamma == 0.0) return kInf;
      return std::log1p(slack * params.p) / (2.0 * gamma * gamma);
    }
  }
  throw ValidationError("unknown threshold kind");
}

BoundReport evaluate_bound(ThresholdKind kind, const ThresholdParams& params, double delta, ReliabilityMode mode,
                           std::optional<long> n) {
  BoundReport report;
  report.kind = kind;
  report.params = params;
  report.delta = delta;
  report.mode = mode;
  report.n_threshold = sample_threshold(kind, params, delta, mode);
  if (n) {
    require(*n >= 0, "sample size must be nonnegative");
    report.n = *n;
  } else {
    report.n = std::isfinite(report.n_threshold) ? static_cast<long>(std::floor(report.n_threshold)) : 0;
  }
  switch (kind) {
    case ThresholdKind::ising_easy:
      report.lambda = params.alpha;
      report.chi2 = chi2_ising_single_edge(report.n, params.p, params.alpha);
      break;
    case ThresholdKind::ising_clique:
      report.lambda = params.beta;
      report.chi2 = chi2_lift(chi2_ising_clique_bound(report.n, params.d, params.beta).bound, params.p, params.d);
      break;
    case ThresholdKind::gaussian:
      report.lambda = params.gamma;
      report.chi2 = params.p >= 2 ? chi2_gaussian_single_edge_bound(report.n, params.p, params.gamma) : 1.0;
      break;
  }
  report.risk_lower_bound = risk_lower_bound(report.chi2);
  return report;
}

namespace {

// Edges on which an alternative's weight differs from the null, with the
// per-sample ratio factors for agreeing (x_i x_j = +1) and disagreeing spins.
struct WeightChange {
  int i, j;
  double delta;
  double agree, disagree;
};

std::vector<WeightChange> weight_changes(const IsingModel& null_model, const IsingModel& alt) {
  std::vector<WeightChange> out;
  auto add = [&](int i, int j, double delta) {
    if (delta != 0.0) out.push_back({i, j, delta, std::exp(delta), std::exp(-delta)});
  };
  const auto& a = null_model.edges();
  const auto& b = alt.edges();
  std::size_t u = 0, v = 0;
  while (u < a.size() || v < b.size()) {
    const bool take_a = v == b.size() || (u < a.size() && std::pair(a[u].i, a[u].j) < std::pair(b[v].i, b[v].j));
    const bool take_b = u == a.size() || (v < b.size() && std::pair(b[v].i, b[v].j) < std::pair(a[u].i, a[u].j));
    if (take_a) {
      add(a[u].i, a[u].j, -a[u].weight);
      ++u;
    } else if (take_b) {
      add(b[v].i, b[v].j, b[v].weight);
      ++v;
    } else {
      add(a[u].i, a[u].j, b[v].weight - a[u].weight);
      ++u;
      ++v;
    }
  }
  return out;
}

inline bool spins_agree(std::size_t state, int i, int j) { return ((state >> i) & 1u) == ((state >> j) & 1u); }

}  // namespace

ExactMoments exact_moments(const ChangeEnsemble& e, long n) {
  require(e.is_ising(), "exact moments are available for Ising ensembles only");
  require(n >= 0, "sample size must be nonnegative");
  const int p = e.p();
  if (static_cast<long>(p) * n > kJointEnumerationCap)
    throw CapExceeded("exact moments enumerate (2^p)^n outcomes; p * n must be <= " +
                      std::to_string(kJointEnumerationCap));
  const auto& fam = e.ising();
  const std::size_t states = std::size_t{1} << p;
  const std::size_t m = fam.alternatives.size();

  const double null_log_z = ising_log_partition(fam.null_model);
  std::vector<std::vector<WeightChange>> changes(m);
  std::vector<double> log_offset(m);  // log Z_P - log Z_Q
  double widest = 0.0;                // bound on |log ratio| of a single sample
  for (std::size_t a = 0; a < m; ++a) {
    changes[a] = weight_changes(fam.null_model, fam.alternatives[a]);
    log_offset[a] = null_log_z - ising_log_partition(fam.alternatives[a]);
    double w = std::abs(log_offset[a]);
    for (const auto& c : changes[a]) w += std::abs(c.delta);
    widest = std::max(widest, w);
  }

  std::vector<double> log_p(states);
  std::vector<double> x(static_cast<std::size_t>(p));
  for (std::size_t s = 0; s < states; ++s) {
    for (int k = 0; k < p; ++k) x[static_cast<std::size_t>(k)] = ((s >> k) & 1u) ? -1.0 : 1.0;
    log_p[s] = fam.null_model.energy(x) - null_log_z;
  }

  double chi2 = 0.0, tv = 0.0;
  double log_chi2 = kNegInf;

  // Products of n per-sample ratios stay well inside double range when every
  // |log ratio| is bounded by 600 / n; then the mixture is summed directly.
  if (widest * static_cast<double>(n) <= 600.0) {
    std::vector<double> prob(states), offset(m);
    for (std::size_t s = 0; s < states; ++s) prob[s] = std::exp(log_p[s]);
    for (std::size_t a = 0; a < m; ++a) offset[a] = std::exp(log_offset[a]);
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(n) + 1, std::vector<double>(m, 1.0));
    std::function<void(long, double)> visit = [&](long depth, double w) {
      const auto& cur = partial[static_cast<std::size_t>(depth)];
      if (depth == n) {
        double l = 0.0;
        for (double v : cur) l += v;
        l /= static_cast<double>(m);
        chi2 += w * l * l;
        if (w > 0.0 && l > 0.0) log_chi2 = log_add(log_chi2, std::log(w) + 2.0 * std::log(l));
        tv += w * std::abs(l - 1.0);
        return;
      }
      auto& next = partial[static_cast<std::size_t>(depth) + 1];
      for (std::size_t s = 0; s < states; ++s) {
        for (std::size_t a = 0; a < m; ++a) {
          double r = cur[a] * offset[a];
          for (const auto& c : changes[a]) r *= spins_agree(s, c.i, c.j) ? c.agree : c.disagree;
          next[a] = r;
        }
        visit(depth + 1, w * prob[s]);
      }
    };
    visit(0, 1.0);
    return {chi2, log_chi2, 0.5 * tv};
  }

  const double log_m = std::log(static_cast<double>(m));
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(n) + 1, std::vector<double>(m, 0.0));
  std::function<void(long, double)> visit = [&](long depth, double log_w) {
    const auto& cur = partial[static_cast<std::size_t>(depth)];
    if (depth == n) {
      const double log_l = log_sum_exp(cur) - log_m;
      chi2 += std::exp(log_w + 2.0 * log_l);
      log_chi2 = log_add(log_chi2, log_w + 2.0 * log_l);
      tv += std::abs(std::exp(log_w + log_l) - std::exp(log_w));
      return;
    }
    auto& next = partial[static_cast<std::size_t>(depth) + 1];
    for (std::size_t s = 0; s < states; ++s) {
      for (std::size_t a = 0; a < m; ++a) {
        double r = cur[a] + log_offset[a];
        for (const auto& c : changes[a]) r += spins_agree(s, c.i, c.j) ? c.delta : -c.delta;
        next[a] = r;
      }
      visit(depth + 1, log_w + log_p[s]);
    }
  };
  visit(0, 0.0);
  return {chi2, log_chi2, 0.5 * tv};
}

double chi2_exact(const ChangeEnsemble& e, long n) { return exact_moments(e, n).chi2; }
double tv_exact(const ChangeEnsemble& e, long n) { return exact_moments(e, n).tv; }

McEstimate chi2_monte_carlo(const ChangeEnsemble& e, long n, std::size_t trials, std::uint64_t seed,
                            unsigned threads) {
  require(n >= 0, "sample size must be nonnegative");
  require(trials >= 2, "Monte Carlo needs at least two trials");
  const EnsembleSampler sampler(e);
  const LikelihoodRatio ratio(e);
  std::vector<double> values(trials);
  parallel_for(trials, resolve_threads(threads), [&](std::size_t t) {
    Philox4x32 rng(seed, null_stream(t));
    const SampleSet xs = sampler.null(static_cast<std::size_t>(n), rng);
    values[t] = std::exp(2.0 * ratio(xs).value);
  });
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(trials - 1);
  return {mean, std::sqrt(var / static_cast<double>(trials))};
}

std::optional<double> chi2_population(const ChangeEnsemble& e, long n) {
  const auto& prm = e.params;
  switch (e.kind) {
    case EnsembleKind::ising_single_edge: return chi2_ising_single_edge(n, prm.p, prm.lambda);
    case EnsembleKind::ising_clique:
      if (prm.d > kCliqueRatioEnumerationCap) return std::nullopt;
      return chi2_lift(std::exp(static_cast<double>(n) * lemma2_log_exact_V(prm.d, prm.lambda)), prm.p, prm.d);
    case EnsembleKind::gaussian_single_edge: return chi2_gaussian_single_edge(n, prm.p, prm.lambda).exact;
    case EnsembleKind::ising_custom:
      if (static_cast<long>(e.p()) * n > kJointEnumerationCap) return std::nullopt;
      return chi2_exact(e, n);
    case EnsembleKind::gaussian_custom: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace mrfcd
