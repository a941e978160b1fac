#include "mrfcd/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mrfcd/error.hpp"
#include "mrfcd/logmath.hpp"

namespace mrfcd {
namespace {

// Running log-sum-exp over a stream of log-weights.
class LogAccumulator {
 public:
  void add(double log_w) {
    if (log_w <= max_) {
      sum_ += std::exp(log_w - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_w) + 1.0;
      max_ = log_w;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

// Edges of one component relabelled to local indices.
struct LocalComponent {
  std::vector<int> nodes;
  std::vector<Edge> edges;
};

std::vector<LocalComponent> split_components(const IsingModel& model, int cap) {
  std::vector<LocalComponent> out;
  std::vector<int> local(static_cast<std::size_t>(model.p()), -1);
  std::vector<int> owner(static_cast<std::size_t>(model.p()), -1);
  for (const auto& nodes : model.components()) {
    if (static_cast<int>(nodes.size()) > cap) {
      throw CapExceeded("connected component of " + std::to_string(nodes.size()) +
                        " nodes exceeds the enumeration cap of " + std::to_string(cap));
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      local[static_cast<std::size_t>(nodes[k])] = static_cast<int>(k);
      owner[static_cast<std::size_t>(nodes[k])] = static_cast<int>(out.size());
    }
    out.push_back({nodes, {}});
  }
  for (const Edge& e : model.edges()) {
    auto& comp = out[static_cast<std::size_t>(owner[static_cast<std::size_t>(e.i)])];
    comp.edges.push_back({local[static_cast<std::size_t>(e.i)], local[static_cast<std::size_t>(e.j)], e.weight});
  }
  return out;
}

// Bit k of the state set means x_k = -1.
inline double state_energy(std::uint32_t state, const std::vector<Edge>& edges) {
  double e = 0.0;
  for (const Edge& edge : edges) {
    const bool differ = ((state >> edge.i) ^ (state >> edge.j)) & 1u;
    e += differ ? -edge.weight : edge.weight;
  }
  return e;
}

double component_log_partition(const LocalComponent& comp) {
  const std::uint32_t states = 1u << comp.nodes.size();
  LogAccumulator acc;
  for (std::uint32_t s = 0; s < states; ++s) acc.add(state_energy(s, comp.edges));
  return acc.value();
}

}  // namespace

NodePair node_pair(int a, int b) {
  require(a != b, "self-pairs are not allowed");
  return a < b ? NodePair{a, b} : NodePair{b, a};
}

IsingModel::IsingModel(int p, std::vector<Edge> edges) : p_(p) {
  require(p >= 1, "Ising model needs at least one node");
  for (Edge& e : edges) {
    require(e.i != e.j, "self-pairs are not allowed");
    if (e.i > e.j) std::swap(e.i, e.j);
    require(e.i >= 0 && e.j < p, "edge index out of range");
    require(std::isfinite(e.weight), "edge weight must be finite");
  }
  std::erase_if(edges, [](const Edge& e) { return e.weight == 0.0; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  for (std::size_t k = 1; k < edges.size(); ++k)
    require(edges[k - 1].i != edges[k].i || edges[k - 1].j != edges[k].j, "duplicate edge");
  edges_ = std::move(edges);
}

double IsingModel::weight(int i, int j) const {
  const NodePair key = node_pair(i, j);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& e, const NodePair& k) {
    return std::tie(e.i, e.j) < std::tie(k.i, k.j);
  });
  return (it != edges_.end() && it->i == key.i && it->j == key.j) ? it->weight : 0.0;
}

std::vector<NodePair> IsingModel::graph() const {
  std::vector<NodePair> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back({e.i, e.j});
  return out;
}

std::vector<int> IsingModel::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(p_), 0);
  for (const Edge& e : edges_) {
    ++deg[static_cast<std::size_t>(e.i)];
    ++deg[static_cast<std::size_t>(e.j)];
  }
  return deg;
}

int IsingModel::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<std::vector<int>> IsingModel::components() const {
  std::vector<int> parent(static_cast<std::size_t>(p_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const Edge& e : edges_) {
    const int a = find(e.i), b = find(e.j);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(p_));
  for (int v = 0; v < p_; ++v) groups[static_cast<std::size_t>(find(v))].push_back(v);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

double IsingModel::energy(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == p_, "configuration length does not match p");
  double e = 0.0;
  for (const Edge& edge : edges_)
    e += edge.weight * x[static_cast<std::size_t>(edge.i)] * x[static_cast<std::size_t>(edge.j)];
  return e;
}

std::string IsingModel::id() const {
  // FNV-1a over the canonical edge list.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < len; ++k) {
      h ^= bytes[k];
      h *= 0x100000001b3ull;
    }
  };
  mix(&p_, sizeof p_);
  for (const Edge& e : edges_) {
    mix(&e.i, sizeof e.i);
    mix(&e.j, sizeof e.j);
    mix(&e.weight, sizeof e.weight);
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "ising-%d-%016llx", p_, static_cast<unsigned long long>(h));
  return buf;
}

IsingModel complete_graph_model(int nodes, double weight) {
  std::vector<Edge> edges;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j) edges.push_back({i, j, weight});
  return {nodes, std::move(edges)};
}

IsingModel clipped_clique_model(int d, double weight) {
  require(d >= 1, "clique degree must be at least 1");
  auto edges = complete_graph_model(d + 1, weight).edges();
  std::erase_if(edges, [](const Edge& e) { return e.i == 0 && e.j == 1; });
  return {d + 1, std::move(edges)};
}

double ising_log_partition(const IsingModel& model, int cap) {
  double total = 0.0;
  for (const auto& comp : split_components(model, cap)) total += component_log_partition(comp);
  return total;
}

double ising_log_prob(const IsingModel& model, std::span<const double> x, int cap) {
  require(static_cast<int>(x.size()) == model.p(), "configuration length does not match p");
  for (double v : x) require(v == 1.0 || v == -1.0, "spin configuration entries must be +-1");
  return model.energy(x) - ising_log_partition(model, cap);
}

double clique_log_partition(int d, double lambda) {
  require(d >= 1, "clique degree must be at least 1");
  require(std::isfinite(lambda), "lambda must be finite");
  const int m = d + 1;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    const double s = m - 2 * j;
    terms.push_back(log_binomial(m, j) + 0.5 * lambda * (s * s - m));
  }
  return log_sum_exp(terms);
}

double clipped_clique_log_partition(int d, double lambda) {
  require(d >= 1, "clique degree must be at least 1");
  require(std::isfinite(lambda), "lambda must be finite");
  const int m = d + 1;
  std::vector<double> terms;
  terms.reserve(4 * static_cast<std::size_t>(d));
  for (int j = 0; j <= d - 1; ++j) {
    const double sigma = (d - 1) - 2 * j;
    for (double x1 : {1.0, -1.0}) {
      for (double x2 : {1.0, -1.0}) {
        const double s = sigma + x1 + x2;
        terms.push_back(log_binomial(d - 1, j) + 0.5 * lambda * (s * s - 2.0 * x1 * x2 - m));
      }
    }
  }
  return log_sum_exp(terms);
}

bool partition_sandwich_applicable(int d, double lambda) {
  return d >= 3 && lambda * (d - 2) >= std::log(d + 1.0) * (1.0 - 1e-12);
}

PartitionSandwich clique_partition_sandwich(int d, double lambda) {
  const double m = d + 1.0;
  const double log_lead = std::log(2.0) + 0.5 * lambda * (m * m - m);
  return {std::exp(clique_log_partition(d, lambda) - log_lead), 1.0 + 3.0 * d * std::exp(-2.0 * lambda * d)};
}

double lemma2_log_exact_V(int d, double lambda) {
  require(d >= 1, "clique degree must be at least 1");
  if (d > kCliqueRatioEnumerationCap)
    throw CapExceeded("lemma2_exact_V enumerates 2^(d+1) states; d must be <= " +
                      std::to_string(kCliqueRatioEnumerationCap));
  const IsingModel clique = complete_graph_model(d + 1, lambda);
  const auto& edges = clique.edges();
  LogAccumulator log_z, log_z_clipped, log_tilted;
  const std::uint32_t states = 1u << (d + 1);
  for (std::uint32_t s = 0; s < states; ++s) {
    const double e = state_energy(s, edges);
    const double x1x2 = ((s ^ (s >> 1)) & 1u) ? -1.0 : 1.0;
    log_z.add(e);
    log_z_clipped.add(e - lambda * x1x2);
    log_tilted.add(e - 2.0 * lambda * x1x2);
  }
  // 2 (log Z - log Z') + log E_P[exp(-2 lambda X1 X2)]
  return 2.0 * (log_z.value() - log_z_clipped.value()) + (log_tilted.value() - log_z.value());
}

double lemma2_exact_V(int d, double lambda) { return std::exp(lemma2_log_exact_V(d, lambda)); }

bool lemma2_applicable(int d, double lambda) {
  // Relative slack so that lambda = ln d / (d - 3) passes despite rounding.
  return d >= 4 && lambda * (d - 3) >= std::log(static_cast<double>(d)) * (1.0 - 1e-12);
}

double lemma2_bound(int d, double lambda) {
  if (!lemma2_applicable(d, lambda))
    throw BoundNotApplicable("clique ratio bound requires d >= 4 and lambda (d - 3) >= ln d");
  return 1.0 + 8.0 * (std::exp(4.0 * lambda) + d) * std::exp(-2.0 * lambda * d);
}

bool class_membership(const IsingModel& model, int p, int d, double alpha, double beta) {
  require(alpha > 0.0 && alpha <= beta, "class parameters need 0 < alpha <= beta");
  if (model.p() != p) return false;
  for (const Edge& e : model.edges()) {
    const double w = std::abs(e.weight);
    if (w < alpha || w > beta) return false;
  }
  return model.max_degree() <= d;
}

IsingSampler::IsingSampler(const IsingModel& model, int cap) : p_(model.p()), model_id_(model.id()) {
  for (auto& comp : split_components(model, cap)) {
    const std::uint32_t states = 1u << comp.nodes.size();
    std::vector<double> log_w(states);
    for (std::uint32_t s = 0; s < states; ++s) log_w[s] = state_energy(s, comp.edges);
    const double top = *std::max_element(log_w.begin(), log_w.end());
    Block block{std::move(comp.nodes), std::vector<double>(states)};
    double running = 0.0;
    for (std::uint32_t s = 0; s < states; ++s) {
      running += std::exp(log_w[s] - top);
      block.cumulative[s] = running;
    }
    blocks_.push_back(std::move(block));
  }
}

void IsingSampler::draw(Philox4x32& rng, std::span<double> row) const {
  for (const Block& block : blocks_) {
    const double u = rng.uniform() * block.cumulative.back();
    auto it = std::upper_bound(block.cumulative.begin(), block.cumulative.end(), u);
    if (it == block.cumulative.end()) --it;
    const auto state = static_cast<std::uint32_t>(it - block.cumulative.begin());
    for (std::size_t k = 0; k < block.nodes.size(); ++k)
      row[static_cast<std::size_t>(block.nodes[k])] = ((state >> k) & 1u) ? -1.0 : 1.0;
  }
}

SampleSet IsingSampler::sample(std::size_t n, Philox4x32& rng, std::uint64_t seed_tag) const {
  const auto p = static_cast<std::size_t>(p_);
  std::vector<double> data(n * p);
  for (std::size_t t = 0; t < n; ++t) draw(rng, {data.data() + t * p, p});
  return {n, p, ValueKind::spin, std::move(data), {seed_tag, model_id_}};
}

SampleSet IsingSampler::sample(std::size_t n, std::uint64_t seed) const {
  Philox4x32 rng(seed, 0);
  return sample(n, rng, seed);
}

SampleSet ising_sample(const IsingModel& model, std::size_t n, std::uint64_t seed, int cap) {
  return IsingSampler(model, cap).sample(n, seed);
}

}  // namespace mrfcd
