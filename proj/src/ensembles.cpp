#include "mrfcd/ensembles.hpp"

#include <cmath>

#include "mrfcd/error.hpp"

namespace mrfcd {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::ising_single_edge: return "ising-single-edge";
    case EnsembleKind::ising_clique: return "ising-clique";
    case EnsembleKind::gaussian_single_edge: return "gaussian-single-edge";
    case EnsembleKind::ising_custom: return "ising-custom";
    case EnsembleKind::gaussian_custom: return "gaussian-custom";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  for (auto k : {EnsembleKind::ising_single_edge, EnsembleKind::ising_clique, EnsembleKind::gaussian_single_edge,
                 EnsembleKind::ising_custom, EnsembleKind::gaussian_custom}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown ensemble kind '" + name + "'");
}

int ChangeEnsemble::p() const {
  return std::visit([](const auto& fam) { return fam.null_model.p(); }, family);
}

std::size_t ChangeEnsemble::size() const {
  return std::visit([](const auto& fam) { return fam.alternatives.size(); }, family);
}

ChangeEnsemble ising_single_edge_ensemble(int p, double lambda) {
  require(p >= 2, "single-edge ensemble needs p >= 2");
  require(lambda != 0.0 && std::isfinite(lambda), "single-edge ensemble needs a finite nonzero lambda");
  ModelFamily<IsingModel> fam{IsingModel(p, {}), {}};
  fam.alternatives.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) fam.alternatives.emplace_back(p, std::vector<Edge>{{i, j, lambda}});
  return {EnsembleKind::ising_single_edge, {p, 0, lambda, 0}, std::move(fam), {}};
}

ChangeEnsemble ising_clique_ensemble(int p, int d, double lambda) {
  require(d >= 1, "clique ensemble needs d >= 1");
  require(p >= d + 1, "clique ensemble needs p >= d + 1");
  require(lambda != 0.0 && std::isfinite(lambda), "clique ensemble needs a finite nonzero lambda");
  const int block = d + 1;
  const int r = p / block;
  std::vector<Edge> edges;
  for (int mu = 0; mu < r; ++mu)
    for (int i = 0; i < block; ++i)
      for (int j = i + 1; j < block; ++j) edges.push_back({mu * block + i, mu * block + j, lambda});

  ModelFamily<IsingModel> fam{IsingModel(p, edges), {}};
  std::vector<NodePair> clipped;
  for (int mu = 0; mu < r; ++mu) {
    const NodePair cut{mu * block, mu * block + 1};
    auto alt_edges = edges;
    std::erase_if(alt_edges, [&](const Edge& e) { return e.i == cut.i && e.j == cut.j; });
    fam.alternatives.emplace_back(p, std::move(alt_edges));
    clipped.push_back(cut);
  }
  return {EnsembleKind::ising_clique, {p, d, lambda, r}, std::move(fam), std::move(clipped)};
}

ChangeEnsemble gaussian_single_edge_ensemble(int p, double lambda) {
  require(p >= 2, "single-edge ensemble needs p >= 2");
  require(lambda != 0.0, "gaussian ensemble needs lambda != 0");
  if (!(std::abs(lambda) < 0.5))
    throw ValidationError("gaussian ensemble needs |lambda| < 1/2 so that det(I + 2 Delta) > 0");
  ModelFamily<GaussianModel> fam{GaussianModel(Eigen::MatrixXd::Identity(p, p)), {}};
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) fam.alternatives.push_back(single_edge_precision(p, {i, j}, lambda));
  return {EnsembleKind::gaussian_single_edge, {p, 0, lambda, 0}, std::move(fam), {}};
}

ChangeEnsemble custom_ensemble(IsingModel null_model, std::vector<IsingModel> alternatives) {
  require(!alternatives.empty(), "ensemble needs at least one alternative");
  for (const auto& q : alternatives) require(q.p() == null_model.p(), "all ensemble members must share p");
  const int p = null_model.p();
  return {EnsembleKind::ising_custom, {p, 0, 0.0, 0}, ModelFamily<IsingModel>{std::move(null_model), std::move(alternatives)}, {}};
}

ChangeEnsemble custom_ensemble(GaussianModel null_model, std::vector<GaussianModel> alternatives) {
  require(!alternatives.empty(), "ensemble needs at least one alternative");
  for (const auto& q : alternatives) require(q.p() == null_model.p(), "all ensemble members must share p");
  const int p = null_model.p();
  return {EnsembleKind::gaussian_custom, {p, 0, 0.0, 0}, ModelFamily<GaussianModel>{std::move(null_model), std::move(alternatives)}, {}};
}

bool verify_structural_difference(const ChangeEnsemble& e) {
  return std::visit(
      [](const auto& fam) {
        const auto null_graph = fam.null_model.graph();
        for (const auto& q : fam.alternatives)
          if (q.p() != fam.null_model.p() || q.graph() == null_graph) return false;
        return !fam.alternatives.empty();
      },
      e.family);
}

}  // namespace mrfcd
