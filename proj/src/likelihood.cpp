#include "mrfcd/likelihood.hpp"

#include <cmath>

#include "mrfcd/error.hpp"
#include "mrfcd/logmath.hpp"

namespace mrfcd {
namespace {

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

void check_dims(const SampleSet& xs, int p) {
  require(static_cast<int>(xs.p()) == p, "sample set has " + std::to_string(xs.p()) + " columns, ensemble has p = " +
                                             std::to_string(p));
}

double clique_mixture(std::span<const NodePair> cut, std::size_t r, double lambda, double log_ratio,
                      const SampleSet& xs) {
  std::vector<double> terms;
  terms.reserve(cut.size());
  const double n = static_cast<double>(xs.n());
  for (const NodePair& pair : cut) {
    double products = 0.0;
    for (std::size_t t = 0; t < xs.n(); ++t)
      products += xs.at(t, static_cast<std::size_t>(pair.i)) * xs.at(t, static_cast<std::size_t>(pair.j));
    terms.push_back(n * log_ratio - lambda * products);
  }
  return log_sum_exp(terms) - std::log(static_cast<double>(r));
}

}  // namespace

GenericLikelihood::GenericLikelihood(const ChangeEnsemble& e) : ensemble_(&e) {
  if (e.is_ising()) {
    null_log_partition_ = ising_log_partition(e.ising().null_model);
    for (const auto& q : e.ising().alternatives) alt_log_partitions_.push_back(ising_log_partition(q));
  }
}

LogLR GenericLikelihood::operator()(const SampleSet& xs) const {
  const ChangeEnsemble& e = *ensemble_;
  check_dims(xs, e.p());
  std::vector<double> terms(e.size(), 0.0);
  if (e.is_ising()) {
    require(xs.kind() == ValueKind::spin, "Ising ensembles need spin-valued samples");
    const auto& fam = e.ising();
    const double n = static_cast<double>(xs.n());
    for (std::size_t a = 0; a < terms.size(); ++a) {
      double acc = -n * (alt_log_partitions_[a] - null_log_partition_);
      for (std::size_t t = 0; t < xs.n(); ++t)
        acc += fam.alternatives[a].energy(xs.row(t)) - fam.null_model.energy(xs.row(t));
      terms[a] = acc;
    }
  } else {
    require(xs.kind() == ValueKind::real, "Gaussian ensembles need real-valued samples");
    const auto& fam = e.gaussian();
    for (std::size_t t = 0; t < xs.n(); ++t) {
      const double base = gaussian_log_density(fam.null_model, xs.row(t));
      for (std::size_t a = 0; a < terms.size(); ++a) terms[a] += gaussian_log_density(fam.alternatives[a], xs.row(t)) - base;
    }
  }
  return {log_sum_exp(terms) - std::log(static_cast<double>(terms.size()))};
}

LogLR log_lr_generic(const ChangeEnsemble& e, const SampleSet& xs) { return GenericLikelihood(e)(xs); }

LogLR log_lr_ising_single_edge(int p, double lambda, const SampleSet& xs) {
  require(p >= 2, "single-edge ratio needs p >= 2");
  check_dims(xs, p);
  require(xs.kind() == ValueKind::spin, "single-edge Ising ratio needs spin-valued samples");
  // Each factor is 2(1 - eta) on agreement and 2 eta otherwise, eta = 1 / (1 + e^{2 lambda}).
  const double log_agree = std::log(2.0) - softplus(-2.0 * lambda);
  const double log_disagree = std::log(2.0) - softplus(2.0 * lambda);
  const auto pu = static_cast<std::size_t>(p);
  std::vector<int> agreements(pu * (pu - 1) / 2, 0);
  for (std::size_t t = 0; t < xs.n(); ++t) {
    const auto row = xs.row(t);
    std::size_t k = 0;
    for (std::size_t i = 0; i < pu; ++i)
      for (std::size_t j = i + 1; j < pu; ++j, ++k) agreements[k] += row[i] == row[j];
  }
  std::vector<double> terms(agreements.size());
  const double n = static_cast<double>(xs.n());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double c = agreements[k];
    terms[k] = c * log_agree + (n - c) * log_disagree;
  }
  return {log_sum_exp(terms) - std::log(static_cast<double>(terms.size()))};
}

LogLR log_lr_ising_clique(const ChangeEnsemble& e, const SampleSet& xs) {
  require(e.kind == EnsembleKind::ising_clique, "log_lr_ising_clique needs an ising-clique ensemble");
  check_dims(xs, e.p());
  require(xs.kind() == ValueKind::spin, "Ising ensembles need spin-valued samples");
  const double lambda = e.params.lambda;
  const double log_ratio = clique_log_partition(e.params.d, lambda) - clipped_clique_log_partition(e.params.d, lambda);
  return {clique_mixture(e.clipped_pairs, e.clipped_pairs.size(), lambda, log_ratio, xs)};
}

LogLR log_lr_ising_clique(int p, int d, double lambda, const SampleSet& xs) {
  require(d >= 1 && p >= d + 1, "clique ratio needs d >= 1 and p >= d + 1");
  check_dims(xs, p);
  require(xs.kind() == ValueKind::spin, "Ising ensembles need spin-valued samples");
  std::vector<NodePair> cut;
  for (int mu = 0; mu < p / (d + 1); ++mu) cut.push_back({mu * (d + 1), mu * (d + 1) + 1});
  const double log_ratio = clique_log_partition(d, lambda) - clipped_clique_log_partition(d, lambda);
  return {clique_mixture(cut, cut.size(), lambda, log_ratio, xs)};
}

LogLR log_lr_gaussian_single_edge(int p, double lambda, const SampleSet& xs) {
  require(p >= 2, "single-edge ratio needs p >= 2");
  require(std::abs(lambda) < 1.0, "gaussian single-edge ratio needs |lambda| < 1");
  check_dims(xs, p);
  require(xs.kind() == ValueKind::real, "Gaussian ratio needs real-valued samples");
  const auto pu = static_cast<std::size_t>(p);
  std::vector<double> products(pu * (pu - 1) / 2, 0.0);
  for (std::size_t t = 0; t < xs.n(); ++t) {
    const auto row = xs.row(t);
    std::size_t k = 0;
    for (std::size_t i = 0; i < pu; ++i)
      for (std::size_t j = i + 1; j < pu; ++j, ++k) products[k] += row[i] * row[j];
  }
  for (double& v : products) v *= -lambda;
  const double n = static_cast<double>(xs.n());
  return {0.5 * n * std::log1p(-lambda * lambda) + log_sum_exp(products) - std::log(static_cast<double>(products.size()))};
}

LikelihoodRatio::LikelihoodRatio(const ChangeEnsemble& e) : ensemble_(&e) {
  switch (e.kind) {
    case EnsembleKind::ising_clique:
      clique_log_ratio_ = clique_log_partition(e.params.d, e.params.lambda) -
                          clipped_clique_log_partition(e.params.d, e.params.lambda);
      break;
    case EnsembleKind::ising_custom:
    case EnsembleKind::gaussian_custom:
      generic_.emplace_back(e);
      break;
    default:
      break;
  }
}

LogLR LikelihoodRatio::operator()(const SampleSet& xs) const {
  const ChangeEnsemble& e = *ensemble_;
  switch (e.kind) {
    case EnsembleKind::ising_single_edge: return log_lr_ising_single_edge(e.params.p, e.params.lambda, xs);
    case EnsembleKind::gaussian_single_edge: return log_lr_gaussian_single_edge(e.params.p, e.params.lambda, xs);
    case EnsembleKind::ising_clique:
      check_dims(xs, e.p());
      return {clique_mixture(e.clipped_pairs, e.clipped_pairs.size(), e.params.lambda, clique_log_ratio_, xs)};
    default: return generic_.front()(xs);
  }
}

int np_test(LogLR lr, double log_tau) { return lr.value >= log_tau ? 1 : 0; }

}  // namespace mrfcd
