#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "mrfcd/ising.hpp"
#include "mrfcd/rng.hpp"
#include "mrfcd/samples.hpp"

namespace mrfcd {

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPivotTolerance = 1e-12;

/// Zero-mean Gaussian MRF parameterized by its precision matrix A.
/// Construction verifies symmetry and positive definiteness via a Cholesky
/// factorization A = L L^T, which is kept for density evaluation and sampling.
class GaussianModel {
 public:
  GaussianModel() = default;
  explicit GaussianModel(Eigen::MatrixXd precision);

  int p() const { return static_cast<int>(precision_.rows()); }
  const Eigen::MatrixXd& precision() const { return precision_; }
  const Eigen::MatrixXd& cholesky_factor() const { return lower_; }
  double log_det() const { return log_det_; }
  std::vector<NodePair> graph() const;
  std::string id() const;

  bool operator==(const GaussianModel& other) const { return precision_ == other.precision_; }

 private:
  Eigen::MatrixXd precision_;
  Eigen::MatrixXd lower_;
  double log_det_ = 0.0;
};

double gaussian_log_density(const GaussianModel& model, std::span<const double> x);

/// x = L^{-T} z with z standard normal, so Cov(x) = A^{-1}.
void gaussian_draw(const GaussianModel& model, Philox4x32& rng, std::span<double> row);
SampleSet gaussian_sample(const GaussianModel& model, std::size_t n, Philox4x32& rng, std::uint64_t seed_tag = 0);
SampleSet gaussian_sample(const GaussianModel& model, std::size_t n, std::uint64_t seed);

/// min over nonzero off-diagonals of |A_ij| / sqrt(A_ii A_jj); nullopt when
/// the model has no edges.
std::optional<double> gamma_of(const GaussianModel& model);

/// I_p + lambda (e_i e_j^T + e_j e_i^T); requires |lambda| < 1.
GaussianModel single_edge_precision(int p, NodePair pair, double lambda);

/// Closed-form det(I_p + Delta_pair1 + Delta_pair2), dispatched on how many
/// nodes the two pairs share.
double pairwise_delta_det(int p, NodePair pair1, NodePair pair2, double lambda);

}  // namespace mrfcd
