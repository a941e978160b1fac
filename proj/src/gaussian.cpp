#include "mrfcd/gaussian.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "mrfcd/error.hpp"

namespace mrfcd {

GaussianModel::GaussianModel(Eigen::MatrixXd precision) : precision_(std::move(precision)) {
  require(precision_.rows() >= 1 && precision_.rows() == precision_.cols(), "precision matrix must be square");
  require(precision_.allFinite(), "precision matrix must be finite");
  const Eigen::Index p = precision_.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (precision_(i, i) <= 0.0) throw NotPositiveDefinite("precision diagonal entries must be positive");
    for (Eigen::Index j = i + 1; j < p; ++j)
      require(std::abs(precision_(i, j) - precision_(j, i)) <= kSymmetryTolerance, "precision matrix is not symmetric");
  }
  // Unpivoted Cholesky so each pivot can be checked against the tolerance.
  lower_ = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double pivot = precision_(j, j) - lower_.row(j).head(j).squaredNorm();
    if (!(pivot > kPivotTolerance)) throw NotPositiveDefinite("precision matrix is not positive definite");
    lower_(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < p; ++i)
      lower_(i, j) = (precision_(i, j) - lower_.row(i).head(j).dot(lower_.row(j).head(j))) / lower_(j, j);
  }
  log_det_ = 2.0 * lower_.diagonal().array().log().sum();
}

std::vector<NodePair> GaussianModel::graph() const {
  std::vector<NodePair> out;
  for (int i = 0; i < p(); ++i)
    for (int j = i + 1; j < p(); ++j)
      if (precision_(i, j) != 0.0) out.push_back({i, j});
  return out;
}

std::string GaussianModel::id() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto* bytes = reinterpret_cast<const unsigned char*>(precision_.data());
  for (std::size_t k = 0; k < static_cast<std::size_t>(precision_.size()) * sizeof(double); ++k) {
    h ^= bytes[k];
    h *= 0x100000001b3ull;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "gaussian-%d-%016llx", p(), static_cast<unsigned long long>(h));
  return buf;
}

double gaussian_log_density(const GaussianModel& model, std::span<const double> x) {
  require(static_cast<int>(x.size()) == model.p(), "observation length does not match p");
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  const double quad = v.dot(model.precision() * v);
  return 0.5 * model.log_det() - 0.5 * model.p() * std::log(2.0 * std::numbers::pi) - 0.5 * quad;
}

void gaussian_draw(const GaussianModel& model, Philox4x32& rng, std::span<double> row) {
  const int p = model.p();
  Eigen::VectorXd z(p);
  for (int k = 0; k < p; ++k) z(k) = rng.normal();
  Eigen::Map<Eigen::VectorXd> out(row.data(), p);
  out = model.cholesky_factor().transpose().triangularView<Eigen::Upper>().solve(z);
}

SampleSet gaussian_sample(const GaussianModel& model, std::size_t n, Philox4x32& rng, std::uint64_t seed_tag) {
  const auto p = static_cast<std::size_t>(model.p());
  std::vector<double> data(n * p);
  for (std::size_t t = 0; t < n; ++t) gaussian_draw(model, rng, {data.data() + t * p, p});
  return {n, p, ValueKind::real, std::move(data), {seed_tag, model.id()}};
}

SampleSet gaussian_sample(const GaussianModel& model, std::size_t n, std::uint64_t seed) {
  Philox4x32 rng(seed, 0);
  return gaussian_sample(model, n, rng, seed);
}

std::optional<double> gamma_of(const GaussianModel& model) {
  const auto& a = model.precision();
  std::optional<double> best;
  for (int i = 0; i < model.p(); ++i) {
    for (int j = i + 1; j < model.p(); ++j) {
      if (a(i, j) == 0.0) continue;
      const double g = std::abs(a(i, j)) / std::sqrt(a(i, i) * a(j, j));
      if (!best || g < *best) best = g;
    }
  }
  return best;
}

GaussianModel single_edge_precision(int p, NodePair pair, double lambda) {
  require(pair.i >= 0 && pair.i < pair.j && pair.j < p, "node pair out of range");
  if (!(std::abs(lambda) < 1.0)) throw NotPositiveDefinite("single-edge precision needs |lambda| < 1");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p, p);
  a(pair.i, pair.j) = a(pair.j, pair.i) = lambda;
  return GaussianModel(std::move(a));
}

double pairwise_delta_det(int p, NodePair pair1, NodePair pair2, double lambda) {
  require(pair1.i >= 0 && pair1.i < pair1.j && pair1.j < p, "node pair out of range");
  require(pair2.i >= 0 && pair2.i < pair2.j && pair2.j < p, "node pair out of range");
  const int shared = (pair1.i == pair2.i) + (pair1.i == pair2.j) + (pair1.j == pair2.i) + (pair1.j == pair2.j);
  const double l2 = lambda * lambda;
  double det = 0.0;
  switch (shared) {
    case 2: det = 1.0 - 4.0 * l2; break;         // I + 2 Delta
    case 1: det = 1.0 - 2.0 * l2; break;         // 3x3 star block
    default: det = (1.0 - l2) * (1.0 - l2); break;  // two 2x2 blocks
  }
  if (!(det > 0.0) || !(std::abs(lambda) < 1.0)) throw NotPositiveDefinite("I + Delta + Delta' is not positive definite");
  return det;
}

}  // namespace mrfcd
