#pragma once

#include <vector>

#include "mrfcd/ensembles.hpp"
#include "mrfcd/samples.hpp"

namespace mrfcd {

/// Natural log of the mixture likelihood ratio L_n of P versus the uniform
/// mixture over the alternatives.
struct LogLR {
  double value = 0.0;
};

/// Generic mixture ratio from per-model log-probabilities (enumerated Ising
/// partition functions or Gaussian log-densities). Caches log partition
/// functions, so build once and evaluate many sample sets.
class GenericLikelihood {
 public:
  explicit GenericLikelihood(const ChangeEnsemble& e);
  LogLR operator()(const SampleSet& xs) const;

 private:
  const ChangeEnsemble* ensemble_;
  double null_log_partition_ = 0.0;
  std::vector<double> alt_log_partitions_;
};

LogLR log_lr_generic(const ChangeEnsemble& e, const SampleSet& xs);

LogLR log_lr_ising_single_edge(int p, double lambda, const SampleSet& xs);
LogLR log_lr_ising_clique(const ChangeEnsemble& e, const SampleSet& xs);
/// Same as above for the canonical block layout of ising_clique_ensemble(p, d, lambda);
/// accepts lambda = 0.
LogLR log_lr_ising_clique(int p, int d, double lambda, const SampleSet& xs);
LogLR log_lr_gaussian_single_edge(int p, double lambda, const SampleSet& xs);

/// Closed form for the three built-in kinds, generic path for hand-built
/// ensembles. This is what the simulators call. The ensemble must outlive
/// the evaluator.
class LikelihoodRatio {
 public:
  explicit LikelihoodRatio(const ChangeEnsemble& e);
  LogLR operator()(const SampleSet& xs) const;

 private:
  const ChangeEnsemble* ensemble_;
  std::vector<GenericLikelihood> generic_;  // empty unless the kind is custom
  double clique_log_ratio_ = 0.0;           // log Z - log Z'
};

/// 1 (declare change) iff lr >= log_tau.
int np_test(LogLR lr, double log_tau);

}  // namespace mrfcd
