#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mrfcd/gaussian.hpp"
#include "mrfcd/ising.hpp"

namespace mrfcd {

enum class EnsembleKind { ising_single_edge, ising_clique, gaussian_single_edge, ising_custom, gaussian_custom };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

struct EnsembleParams {
  int p = 0;
  int d = 0;  // clique ensembles only
  double lambda = 0.0;
  int r = 0;  // number of cliques (clique ensembles only)
  bool operator==(const EnsembleParams&) const = default;
};

template <class Model>
struct ModelFamily {
  Model null_model;
  std::vector<Model> alternatives;  // uniform prior over this list
  bool operator==(const ModelFamily&) const = default;
};

/// A null model P and the alternatives Q_1..Q_m of a change-detection ensemble.
struct ChangeEnsemble {
  EnsembleKind kind = EnsembleKind::ising_custom;
  EnsembleParams params;
  std::variant<ModelFamily<IsingModel>, ModelFamily<GaussianModel>> family;
  /// ising_clique only: the deleted edge of each alternative, in alternative order.
  std::vector<NodePair> clipped_pairs;

  bool is_ising() const { return family.index() == 0; }
  const ModelFamily<IsingModel>& ising() const { return std::get<0>(family); }
  const ModelFamily<GaussianModel>& gaussian() const { return std::get<1>(family); }
  int p() const;
  std::size_t size() const;

  bool operator==(const ChangeEnsemble&) const = default;
};

/// P = empty graph on p nodes; one alternative per pair with weight lambda.
ChangeEnsemble ising_single_edge_ensemble(int p, double lambda);
/// P = r = floor(p/(d+1)) disjoint K_{d+1} blocks on nodes [0, r(d+1)) with
/// uniform weight lambda, remaining nodes isolated. Alternative mu removes the
/// first edge (lexicographically) of block mu.
ChangeEnsemble ising_clique_ensemble(int p, int d, double lambda);
/// P = I_p; alternatives I_p + Delta_ij.
ChangeEnsemble gaussian_single_edge_ensemble(int p, double lambda);

/// Hand-assembled ensembles (no structural check is applied).
ChangeEnsemble custom_ensemble(IsingModel null_model, std::vector<IsingModel> alternatives);
ChangeEnsemble custom_ensemble(GaussianModel null_model, std::vector<GaussianModel> alternatives);

bool verify_structural_difference(const ChangeEnsemble& e);

}  // namespace mrfcd
