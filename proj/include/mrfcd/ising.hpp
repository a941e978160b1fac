#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mrfcd/rng.hpp"
#include "mrfcd/samples.hpp"

namespace mrfcd {

// Node indices are 0-based throughout the C++ API; serialized forms are 1-based.
struct NodePair {
  int i = 0;
  int j = 1;
  auto operator<=>(const NodePair&) const = default;
};

// Normalizes (a, b) into i < j. Throws on a == b.
NodePair node_pair(int a, int b);

struct Edge {
  int i = 0;
  int j = 1;
  double weight = 0.0;
  bool operator==(const Edge&) const = default;
};

inline constexpr int kDefaultEnumerationCap = 25;

/// Zero-external-field Ising model: P(x) proportional to exp(sum_{i<j} theta_ij x_i x_j).
///
/// Edges are kept sorted by (i, j); zero weights are dropped so that the edge
/// list is exactly the graph G(theta). Immutable after construction.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(int p, std::vector<Edge> edges);

  int p() const { return p_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double weight(int i, int j) const;
  std::vector<NodePair> graph() const;
  std::vector<int> degrees() const;
  int max_degree() const;
  /// Connected components of G(theta), each a sorted node list; isolated
  /// nodes are singleton components. Ordered by smallest node.
  std::vector<std::vector<int>> components() const;

  /// sum_{i<j} theta_ij x_i x_j
  double energy(std::span<const double> x) const;

  /// Stable identifier derived from the parameters (used in sample provenance).
  std::string id() const;

  bool operator==(const IsingModel&) const = default;

 private:
  int p_ = 0;
  std::vector<Edge> edges_;
};

IsingModel complete_graph_model(int nodes, double weight);
/// K_{d+1} with uniform weight and the edge (0, 1) removed.
IsingModel clipped_clique_model(int d, double weight);

double ising_log_partition(const IsingModel& model, int cap = kDefaultEnumerationCap);
double ising_log_prob(const IsingModel& model, std::span<const double> x, int cap = kDefaultEnumerationCap);

/// log Z of K_{d+1} with uniform weight, from the magnetization series over
/// j = 0..d+1 (number of -1 spins).
double clique_log_partition(int d, double lambda);
/// log Z' of K_{d+1} minus edge (1,2), from the reduced series over the
/// remaining d-1 spins and the two endpoints.
double clipped_clique_log_partition(int d, double lambda);

struct PartitionSandwich {
  double ratio;  // Z / (2 exp((lambda/2)((d+1)^2 - (d+1))))
  double upper;  // 1 + 3 d exp(-2 lambda d)
};
/// Only meaningful where lambda (d - 2) >= ln(d + 1).
bool partition_sandwich_applicable(int d, double lambda);
PartitionSandwich clique_partition_sandwich(int d, double lambda);

inline constexpr int kCliqueRatioEnumerationCap = 20;

/// (Z/Z')^2 E_P[exp(-2 lambda X_1 X_2)] with every factor obtained by
/// enumerating the 2^{d+1} states of K_{d+1}.
double lemma2_exact_V(int d, double lambda);
/// Log of lemma2_exact_V, avoiding the final exponentiation.
double lemma2_log_exact_V(int d, double lambda);

bool lemma2_applicable(int d, double lambda);
/// 1 + 8(e^{4 lambda} + d) e^{-2 lambda d}; throws BoundNotApplicable outside
/// d >= 4, lambda (d - 3) >= ln d.
double lemma2_bound(int d, double lambda);

/// True iff the model has p nodes, max degree <= d and every edge weight
/// satisfies alpha <= |theta_ij| <= beta.
bool class_membership(const IsingModel& model, int p, int d, double alpha, double beta);

/// Exact i.i.d. sampler. The model is split into connected components; each
/// component gets a cumulative table over its 2^m states and draws by
/// inversion. Throws CapExceeded if any component has more than `cap` nodes.
class IsingSampler {
 public:
  explicit IsingSampler(const IsingModel& model, int cap = kDefaultEnumerationCap);

  int p() const { return p_; }
  void draw(Philox4x32& rng, std::span<double> row) const;
  SampleSet sample(std::size_t n, Philox4x32& rng, std::uint64_t seed_tag = 0) const;
  SampleSet sample(std::size_t n, std::uint64_t seed) const;

 private:
  struct Block {
    std::vector<int> nodes;
    std::vector<double> cumulative;
  };
  int p_ = 0;
  std::string model_id_;
  std::vector<Block> blocks_;
};

SampleSet ising_sample(const IsingModel& model, std::size_t n, std::uint64_t seed,
                       int cap = kDefaultEnumerationCap);

}  // namespace mrfcd
