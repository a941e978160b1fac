#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "mrfcd/error.hpp"
#include "mrfcd/lecam.hpp"
#include "mrfcd/logmath.hpp"
#include "oracles.hpp"

using namespace mrfcd;

namespace {

// Frozen from a 30-digit evaluation of the same expressions.
constexpr double kEasyP10Alpha05 = 19.7809633844186219613737689008;
constexpr double kGaussGamma039P100 = 15.1713363472756720936364177085;
constexpr double kEasyP20Alpha04 = 38.9499908412058726;
constexpr double kCliqueP10D4Beta15 = 54.8575655268829771257756576048;
// Same p = 10, alpha = 0.5 point with the logarithm dropped from the numerator.
constexpr double kEasyNumeratorWithoutLog = 237.662455543020277;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("single edge Ising second moment") {
  CHECK(chi2_ising_single_edge(0, 5, 0.7) == 1.0);
  CHECK(chi2_ising_single_edge(9, 5, 0.0) == 1.0);
  const auto e = ising_single_edge_ensemble(3, 0.5);
  CHECK(std::fabs(chi2_exact(e, 2) - chi2_ising_single_edge(2, 3, 0.5)) < 1e-10);
  const double t2 = std::tanh(0.5) * std::tanh(0.5);
  CHECK(chi2_ising_single_edge(2, 3, 0.5) == doctest::Approx(1 + ((1 + t2) * (1 + t2) - 1) / 3));
}

TEST_CASE("exact moments match the independent mixture oracle") {
  for (double lambda : {0.3, -1.2}) {
    const auto e = ising_single_edge_ensemble(3, lambda);
    for (int n = 0; n <= 3; ++n) {
      const auto ref = oracle::mixture_moments(e.ising().null_model, e.ising().alternatives, n);
      const auto got = exact_moments(e, n);
      CHECK(std::fabs(got.chi2 - static_cast<double>(ref.chi2)) < 1e-10);
      CHECK(std::fabs(got.tv - static_cast<double>(ref.tv)) < 1e-10);
      CHECK(static_cast<double>(ref.mean) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  IsingModel p(4, {{0, 1, 0.5}, {2, 3, -0.3}});
  std::vector<IsingModel> alts{IsingModel(4, {{0, 1, 0.5}}), IsingModel(4, {{0, 1, 0.5}, {2, 3, -0.3}, {1, 2, 0.9}})};
  const auto e = custom_ensemble(p, alts);
  const auto ref = oracle::mixture_moments(p, alts, 2);
  CHECK(std::fabs(chi2_exact(e, 2) - static_cast<double>(ref.chi2)) < 1e-10);
  CHECK(std::fabs(tv_exact(e, 2) - static_cast<double>(ref.tv)) < 1e-10);
}

TEST_CASE("exact moment edge cases") {
  const auto e = ising_single_edge_ensemble(3, 1.0);
  CHECK(chi2_exact(e, 0) == doctest::Approx(1.0));
  CHECK(tv_exact(e, 0) == doctest::Approx(0.0));
  IsingModel flat(3, {});
  CHECK(tv_exact(custom_ensemble(flat, {flat}), 2) == doctest::Approx(0.0));
  CHECK(tv_exact(e, 2) <= 0.5 * std::sqrt(chi2_exact(e, 2) - 1) + 1e-12);
  const auto m = exact_moments(ising_clique_ensemble(3, 2, 1.0), 2);
  CHECK(std::isfinite(m.chi2));
  CHECK(m.chi2 == doctest::Approx(std::exp(m.log_chi2)).epsilon(1e-12));
  CHECK_THROWS_AS(chi2_exact(ising_single_edge_ensemble(10, 0.5), 2), CapExceeded);
  CHECK_THROWS_AS(chi2_exact(gaussian_single_edge_ensemble(3, 0.2), 1), ValidationError);
}

TEST_CASE("Gaussian second moment") {
  const auto zero = chi2_gaussian_single_edge(0, 6, 0.3);
  CHECK(zero.exact == doctest::Approx(1.0));
  CHECK(zero.bound >= 1.0);
  CHECK(chi2_gaussian_single_edge(5, 6, 0.0).exact == doctest::Approx(1.0));
  CHECK_THROWS_AS(chi2_gaussian_single_edge(1, 4, 0.5), ValidationError);
  // p = 2: one pair, the value is a^n
  const double a = (1 - 0.09) / std::sqrt(1 - 0.36);
  CHECK(chi2_gaussian_single_edge(3, 2, 0.3).exact == doctest::Approx(a * a * a));
  for (int p = 2; p <= 12; ++p)
    for (int n = 0; n <= 20; ++n)
      for (double l : {0.05, 0.2, 0.39, 0.49}) {
        const auto c = chi2_gaussian_single_edge(n, p, l);
        CHECK(c.exact <= c.bound * (1 + 1e-12));
        CHECK(c.bound == chi2_gaussian_single_edge_bound(n, p, l));
      }
}

TEST_CASE("Gaussian second moment matches Monte Carlo") {
  const auto e = gaussian_single_edge_ensemble(4, 0.2);
  const auto mc = chi2_monte_carlo(e, 3, 100000, 3);
  CHECK(std::fabs(mc.estimate - chi2_gaussian_single_edge(3, 4, 0.2).exact) < 4 * mc.std_error);
}

TEST_CASE("lift") {
  CHECK(chi2_lift(1.0, 10, 4) == 1.0);
  CHECK(chi2_lift(1.7, 5, 4) == 1.7);
  CHECK(chi2_lift(1.7, 12, 2) == doctest::Approx(1.175));
  CHECK_THROWS_AS(chi2_lift(0.5, 10, 4), ValidationError);
  // shrunken instance: two disjoint triangles against one
  for (long n = 1; n <= 2; ++n) {
    const double h = chi2_exact(ising_clique_ensemble(3, 2, 0.9), n);
    CHECK(std::fabs(chi2_lift(h, 6, 2) - chi2_exact(ising_clique_ensemble(6, 2, 0.9), n)) < 1e-10);
    CHECK(std::fabs(chi2_lift(h, 7, 2) - chi2_exact(ising_clique_ensemble(7, 2, 0.9), n)) < 1e-10);
  }
}

TEST_CASE("clique second moment") {
  CHECK(chi2_ising_clique_bound(0, 5, 1.0).bound == 1.0);
  CHECK(chi2_ising_clique_bound(0, 5, 1.0).exact == 1.0);
  CHECK(chi2_ising_clique_bound(1, 4, std::log(4.0)).bound == doctest::Approx(1.03173828125));
  CHECK_THROWS_AS(chi2_ising_clique_bound(1, 4, 0.1), BoundNotApplicable);
  for (int d = 4; d <= 10; ++d)
    for (long n : {1, 5, 40}) {
      const auto c = chi2_ising_clique_bound(n, d, 1.5 * std::log(d) / (d - 3));
      CHECK(c.exact <= c.bound);
    }
  const auto e = ising_clique_ensemble(7, 6, 0.9);
  const auto mc = chi2_monte_carlo(e, 2, 100000, 8);
  CHECK(std::fabs(mc.estimate - chi2_ising_clique_bound(2, 6, 0.9).exact) < 4 * mc.std_error);
  CHECK(*chi2_population(e, 2) == doctest::Approx(chi2_ising_clique_bound(2, 6, 0.9).exact));
}

TEST_CASE("risk lower bound") {
  CHECK(risk_lower_bound(1.0) == 1.0);
  CHECK(risk_lower_bound(2.0) == doctest::Approx(0.5));
  CHECK(risk_lower_bound(5.0) == doctest::Approx(0.0));
  CHECK(risk_lower_bound(17.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(risk_lower_bound(0.9), ValidationError);
}

TEST_CASE("thresholds: frozen values") {
  const ThresholdParams easy{10, 0, 0.5, 0, 0};
  CHECK(rel(sample_threshold(ThresholdKind::ising_easy, easy, 0.5), kEasyP10Alpha05) < 1e-13);
  CHECK(rel(sample_threshold(ThresholdKind::ising_easy, {20, 0, 0.4, 0, 0}, 0.5), kEasyP20Alpha04) < 1e-13);
  CHECK(rel(sample_threshold(ThresholdKind::gaussian, {100, 0, 0, 0, 0.39}, 0.0), kGaussGamma039P100) < 1e-13);
  CHECK(rel(sample_threshold(ThresholdKind::ising_clique, {10, 4, 0, 1.5, 0}, 0.5), kCliqueP10D4Beta15) < 1e-13);
  CHECK(sample_threshold(ThresholdKind::ising_easy, {10, 0, 0.0, 0, 0}, 0.5) == kInf);
  CHECK(sample_threshold(ThresholdKind::gaussian, {10, 0, 0, 0, 0.0}, 0.5) == kInf);
}

TEST_CASE("thresholds: numerator keeps its logarithm") {
  // The threshold keeps the logarithm in the numerator. Dropping it gives a
  // much larger value; this pins the two apart.
  const double t2 = std::tanh(0.5) * std::tanh(0.5);
  const double without_log = (1 + 4 * 0.25 * 45) / std::log(1 + t2);
  CHECK(rel(without_log, kEasyNumeratorWithoutLog) < 1e-13);
  CHECK(sample_threshold(ThresholdKind::ising_easy, {10, 0, 0.5, 0, 0}, 0.5) < without_log / 10);
}

TEST_CASE("thresholds: the d-squared variant of the clique bound is looser") {
  for (int d = 4; d <= 14; ++d) {
    const double l = std::log(d) / (d - 3);
    const double variant = 1 + 8 * (std::exp(4 * l) + d * d) * std::exp(-2 * l * d);
    CHECK(lemma2_bound(d, l) <= variant);
  }
}

TEST_CASE("thresholds: monotonicity") {
  double prev = kInf;
  for (int k = 1; k <= 30; ++k) {
    const double t = sample_threshold(ThresholdKind::ising_easy, {10, 0, 0.1 * k, 0, 0}, 0.3);
    CHECK(t <= prev);
    prev = t;
  }
  prev = 0;
  for (int p = 2; p <= 200; p += 7) {
    const double t = sample_threshold(ThresholdKind::ising_easy, {p, 0, 0.4, 0, 0}, 0.3);
    CHECK(t >= prev);
    prev = t;
  }
  prev = kInf;
  for (int k = 0; k <= 20; ++k) {
    const double t = sample_threshold(ThresholdKind::ising_easy, {30, 0, 0.4, 0, 0}, 0.05 * k);
    CHECK(t <= prev);
    prev = t;
  }
}

TEST_CASE("thresholds: modes and gates") {
  const ThresholdParams easy{10, 0, 0.5, 0, 0};
  CHECK(sample_threshold(ThresholdKind::ising_easy, easy, 0.2, ReliabilityMode::structure_learning) ==
        sample_threshold(ThresholdKind::ising_easy, easy, 0.4));
  CHECK_THROWS_AS(sample_threshold(ThresholdKind::ising_easy, easy, 0.6, ReliabilityMode::structure_learning),
                  ValidationError);
  CHECK_THROWS_AS(sample_threshold(ThresholdKind::ising_easy, easy, 1.2), ValidationError);
  CHECK_THROWS_AS(sample_threshold(ThresholdKind::ising_clique, {10, 4, 0, 0.5, 0}, 0.5), BoundNotApplicable);
  CHECK_THROWS_AS(sample_threshold(ThresholdKind::ising_clique, {10, 3, 0, 2.0, 0}, 0.5), BoundNotApplicable);
  CHECK_THROWS_AS(sample_threshold(ThresholdKind::gaussian, {10, 0, 0, 0, 0.4}, 0.5), BoundNotApplicable);
  CHECK(sample_threshold(ThresholdKind::ising_easy, easy, 1.0) == 0.0);
  for (auto k : {ThresholdKind::ising_easy, ThresholdKind::ising_clique, ThresholdKind::gaussian})
    CHECK(threshold_kind_from_string(to_string(k)) == k);
  for (auto m : {ReliabilityMode::change_detection, ReliabilityMode::structure_learning})
    CHECK(reliability_mode_from_string(to_string(m)) == m);
}

TEST_CASE("clique threshold inverts the bound chain") {
  // Below the threshold the lifted bound stays under 1 + 4(1 - delta)^2. The
  // threshold uses ln(1 + x) <= x on the per-sample rate, so the crossing
  // point of the bound itself is ceil(ln(1 + K) / ln(1 + x)), which is at or
  // above the ceiling of the threshold.
  for (int d = 4; d <= 10; ++d)
    for (double scale : {1.0, 1.5, 2.0})
      for (int p : {d + 1, 3 * (d + 1), 50})
        for (double delta : {0.1, 0.5, 0.9}) {
          const double beta = scale * std::log(d) / (d - 3);
          const double t = sample_threshold(ThresholdKind::ising_clique, {p, d, 0, beta, 0}, delta);
          const double target = 1 + 4 * (1 - delta) * (1 - delta);
          const long below = static_cast<long>(std::floor(t));
          CHECK(chi2_lift(chi2_ising_clique_bound(below, d, beta).bound, p, d) <= target * (1 + 1e-12));
          const int r = p / (d + 1);
          const double x = lemma2_bound(d, beta) - 1;
          const long crossing = static_cast<long>(std::ceil(std::log1p(4 * (1 - delta) * (1 - delta) * r) / std::log1p(x)));
          CHECK(crossing >= static_cast<long>(std::ceil(t)));
          CHECK(chi2_lift(chi2_ising_clique_bound(crossing, d, beta).bound, p, d) >= target * (1 - 1e-12));
        }
}

TEST_CASE("bound reports") {
  const auto r = evaluate_bound(ThresholdKind::ising_easy, {20, 0, 0.4, 0, 0}, 0.5);
  CHECK(r.n == 38);
  CHECK(r.lambda == 0.4);
  CHECK(r.chi2 == chi2_ising_single_edge(38, 20, 0.4));
  CHECK(r.risk_lower_bound >= 0.5);
  CHECK(r.risk_lower_bound == doctest::Approx(0.531).epsilon(0.01));
  const auto far = evaluate_bound(ThresholdKind::ising_easy, {20, 0, 0.4, 0, 0}, 0.5, ReliabilityMode::change_detection, 2000);
  CHECK(far.risk_lower_bound < 0);
  CHECK(far.risk_lower_bound_floored() == 0.0);
  const auto inf = evaluate_bound(ThresholdKind::gaussian, {10, 0, 0, 0, 0.0}, 0.5);
  CHECK(inf.n == 0);
  CHECK(inf.chi2 == 1.0);
  const auto clique = evaluate_bound(ThresholdKind::ising_clique, {10, 4, 0, 1.5, 0}, 0.5);
  CHECK(clique.n == 54);
  CHECK(clique.risk_lower_bound >= 0.5);
  const auto g = evaluate_bound(ThresholdKind::gaussian, {100, 0, 0, 0, 0.39}, 0.0);
  CHECK(g.risk_lower_bound >= 0.0);
}

TEST_CASE("Monte Carlo estimate") {
  const auto e = ising_single_edge_ensemble(6, 0.5);
  const auto mc = chi2_monte_carlo(e, 3, 200000, 5);
  CHECK(std::fabs(mc.estimate - chi2_ising_single_edge(3, 6, 0.5)) < 4 * mc.std_error);
  const auto again = chi2_monte_carlo(e, 3, 5000, 5, 1);
  const auto threaded = chi2_monte_carlo(e, 3, 5000, 5, 3);
  CHECK(again.estimate == threaded.estimate);
  CHECK(again.std_error == threaded.std_error);
  IsingModel flat(4, {});
  const auto null_mc = chi2_monte_carlo(custom_ensemble(flat, {flat}), 3, 1000, 1);
  CHECK(null_mc.estimate == doctest::Approx(1.0));
}

TEST_CASE("population second moment") {
  CHECK(*chi2_population(ising_single_edge_ensemble(5, 0.4), 3) == chi2_ising_single_edge(3, 5, 0.4));
  CHECK(*chi2_population(gaussian_single_edge_ensemble(5, 0.3), 3) == chi2_gaussian_single_edge(3, 5, 0.3).exact);
  const auto small = ising_clique_ensemble(6, 2, 0.7);
  CHECK(std::fabs(*chi2_population(small, 2) - chi2_exact(small, 2)) < 1e-10);
  const GaussianModel g(Eigen::MatrixXd::Identity(2, 2));
  CHECK_FALSE(chi2_population(custom_ensemble(g, {g}), 1).has_value());
  IsingModel flat(10, {});
  CHECK_FALSE(chi2_population(custom_ensemble(flat, {flat}), 2).has_value());
}
