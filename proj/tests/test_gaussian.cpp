#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mrfcd/error.hpp"
#include "mrfcd/gaussian.hpp"

using namespace mrfcd;

namespace {

const double kLog2Pi = std::log(2 * std::numbers::pi);

Eigen::MatrixXd random_pd(int p, std::uint64_t seed) {
  Philox4x32 g(seed, 0);
  Eigen::MatrixXd b(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) b(i, j) = g.normal();
  return b * b.transpose() + p * Eigen::MatrixXd::Identity(p, p);
}

Eigen::MatrixXd with_deltas(int p, NodePair a, NodePair b, double lambda) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p, p);
  m(a.i, a.j) += lambda;
  m(a.j, a.i) += lambda;
  m(b.i, b.j) += lambda;
  m(b.j, b.i) += lambda;
  return m;
}

}  // namespace

TEST_CASE("log density examples") {
  for (int p : {1, 3, 6}) {
    const std::vector<double> zero(p, 0.0);
    CHECK(gaussian_log_density(GaussianModel(Eigen::MatrixXd::Identity(p, p)), zero) ==
          doctest::Approx(-0.5 * p * kLog2Pi));
  }
  const std::vector<double> zero2{0.0, 0.0};
  CHECK(gaussian_log_density(single_edge_precision(2, {0, 1}, 0.3), zero2) ==
        doctest::Approx(0.5 * std::log(0.91) - kLog2Pi).epsilon(1e-14));
}

TEST_CASE("log density against an inverted covariance") {
  const int p = 5;
  const Eigen::MatrixXd a = random_pd(p, 4);
  GaussianModel m(a);
  const Eigen::MatrixXd cov = a.inverse();
  Philox4x32 g(8, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd x(p);
    for (int k = 0; k < p; ++k) x(k) = g.normal();
    const double expected = -0.5 * std::log(cov.determinant()) - 0.5 * p * kLog2Pi -
                            0.5 * x.dot(cov.ldlt().solve(x));
    const std::vector<double> xv(x.data(), x.data() + p);
    CHECK(std::fabs(gaussian_log_density(m, xv) - expected) < 1e-9);
  }
}

TEST_CASE("density integrates to one") {
  // importance sampling from N(0, 4 I)
  for (int p = 1; p <= 3; ++p) {
    const Eigen::MatrixXd a = random_pd(p, 10 + p) / (2.0 * p);
    GaussianModel m(a);
    Philox4x32 g(20 + p, 0);
    const int n = 100000;
    double s = 0, s2 = 0;
    std::vector<double> x(p);
    for (int t = 0; t < n; ++t) {
      double log_q = -0.5 * p * std::log(2 * std::numbers::pi * 4.0);
      for (int k = 0; k < p; ++k) {
        x[k] = 2.0 * g.normal();
        log_q -= x[k] * x[k] / 8.0;
      }
      const double w = std::exp(gaussian_log_density(m, x) - log_q);
      s += w;
      s2 += w * w;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - 1.0) < 3 * se);
  }
}

TEST_CASE("construction errors") {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(GaussianModel{asym}, ValidationError);
  Eigen::MatrixXd neg = Eigen::MatrixXd::Identity(2, 2);
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS(GaussianModel{neg}, NotPositiveDefinite);
  Eigen::MatrixXd singular(2, 2);
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(GaussianModel{singular}, NotPositiveDefinite);
  CHECK_THROWS_AS(GaussianModel{Eigen::MatrixXd::Identity(2, 3)}, ValidationError);
  const std::vector<double> short_x{0.0};
  CHECK_THROWS_AS(gaussian_log_density(GaussianModel(Eigen::MatrixXd::Identity(2, 2)), short_x), ValidationError);
}

TEST_CASE("single edge precision") {
  CHECK(single_edge_precision(4, {1, 2}, 0.0).precision() == Eigen::MatrixXd::Identity(4, 4));
  const auto m = single_edge_precision(2, {0, 1}, 0.99);
  CHECK(std::exp(m.log_det()) == doctest::Approx(1 - 0.99 * 0.99).epsilon(1e-12));
  CHECK_THROWS_AS(single_edge_precision(2, {0, 1}, 1.0), ValidationError);
  CHECK(m.graph() == std::vector<NodePair>{{0, 1}});
}

TEST_CASE("gamma") {
  CHECK_FALSE(gamma_of(GaussianModel(Eigen::MatrixXd::Identity(3, 3))).has_value());
  CHECK(*gamma_of(single_edge_precision(2, {0, 1}, 0.3)) == doctest::Approx(0.3));
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  a(0, 1) = a(1, 0) = 0.2;
  a(1, 2) = a(2, 1) = -0.4;
  CHECK(*gamma_of(GaussianModel(a)) == doctest::Approx(0.2));
  Eigen::MatrixXd scaled = Eigen::MatrixXd::Identity(2, 2);
  scaled(0, 0) = 4.0;
  scaled(0, 1) = scaled(1, 0) = 0.6;
  CHECK(*gamma_of(GaussianModel(scaled)) == doctest::Approx(0.3));
}

TEST_CASE("determinant identities") {
  CHECK(pairwise_delta_det(4, {0, 1}, {2, 3}, 0.2) == doctest::Approx(0.9216).epsilon(1e-14));
  CHECK(pairwise_delta_det(4, {0, 1}, {1, 2}, 0.2) == doctest::Approx(0.92).epsilon(1e-14));
  CHECK(pairwise_delta_det(4, {0, 1}, {0, 1}, 0.2) == doctest::Approx(0.84).epsilon(1e-14));
  CHECK_THROWS_AS(pairwise_delta_det(4, {0, 1}, {0, 1}, 0.5), ValidationError);
  for (int p = 4; p <= 8; ++p)
    for (double lambda : {0.05, 0.1, 0.2, 0.35}) {
      const std::vector<std::pair<NodePair, NodePair>> cases{
          {{0, 1}, {0, 1}}, {{0, 1}, {2, 3}}, {{0, 1}, {1, 3}}, {{1, 2}, {0, 2}}, {{0, p - 1}, {p - 2, p - 1}}};
      for (const auto& [a, b] : cases)
        CHECK(std::fabs(pairwise_delta_det(p, a, b, lambda) - with_deltas(p, a, b, lambda).determinant()) < 1e-12);
    }
}

TEST_CASE("sample covariance") {
  const std::size_t n = 100000;
  const auto xs = gaussian_sample(GaussianModel(Eigen::MatrixXd::Identity(3, 3)), n, 5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (std::size_t t = 0; t < n; ++t) s += xs.at(t, i) * xs.at(t, j);
      const double se = (i == j ? std::sqrt(2.0) : 1.0) / std::sqrt(static_cast<double>(n));
      CHECK(std::fabs(s / n - (i == j ? 1.0 : 0.0)) < 4 * se);
    }
  // A = I + Delta(0.3): correlation of (X1, X2) is -0.3
  const auto ys = gaussian_sample(single_edge_precision(2, {0, 1}, 0.3), n, 6);
  double s11 = 0, s22 = 0, s12 = 0;
  for (std::size_t t = 0; t < n; ++t) {
    s11 += ys.at(t, 0) * ys.at(t, 0);
    s22 += ys.at(t, 1) * ys.at(t, 1);
    s12 += ys.at(t, 0) * ys.at(t, 1);
  }
  const double rho = s12 / std::sqrt(s11 * s22);
  CHECK(std::fabs(rho + 0.3) < 4 * (1 - 0.09) / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto m = single_edge_precision(3, {0, 2}, -0.25);
  CHECK(gaussian_sample(m, 50, 1) == gaussian_sample(m, 50, 1));
  CHECK_FALSE(gaussian_sample(m, 50, 1) == gaussian_sample(m, 50, 2));
  CHECK(gaussian_sample(m, 5, 1).kind() == ValueKind::real);
}

TEST_CASE("log determinant gap is at most 2 lambda^2 up to 0.39") {
  for (int k = 0; k <= 390; ++k) {
    const double l = 0.001 * k;
    CHECK(std::log(1 - l * l) - 0.5 * std::log(1 - 4 * l * l) <= 2 * l * l);
  }
}
