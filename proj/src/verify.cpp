#include "mrfcd/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include <Eigen/Dense>

#include "mrfcd/ensembles.hpp"
#include "mrfcd/error.hpp"
#include "mrfcd/gaussian.hpp"
#include "mrfcd/ising.hpp"
#include "mrfcd/lecam.hpp"

namespace mrfcd {
namespace {

class Checker {
 public:
  explicit Checker(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const char* fmt, double a = 0, double b = 0, double c = 0) {
    ++result_.checks;
    if (ok) return;
    if (result_.failures++ == 0) {
      char buf[256];
      std::snprintf(buf, sizeof buf, fmt, a, b, c);
      result_.first_failure = buf;
    }
  }
  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
};

SuiteResult lemma1_chain() {
  Checker c("lemma1-chain");
  std::vector<ChangeEnsemble> ensembles;
  for (int p = 2; p <= 4; ++p)
    for (double lambda : {0.3, 0.8, 1.5}) ensembles.push_back(ising_single_edge_ensemble(p, lambda));
  for (int d = 1; d <= 2; ++d)
    for (int p = d + 1; p <= 6; ++p) ensembles.push_back(ising_clique_ensemble(p, d, 0.7));
  for (const auto& e : ensembles) {
    for (long n = 0; e.p() * n <= 12; ++n) {
      const auto m = exact_moments(e, n);
      c.check(1.0 - m.tv >= risk_lower_bound(m.chi2) - 1e-10, "1 - TV = %g < risk bound %g (p=%g)", 1.0 - m.tv,
              risk_lower_bound(m.chi2), e.p());
      c.check(m.tv <= 0.5 * std::sqrt(std::max(m.chi2 - 1.0, 0.0)) + 1e-10, "TV %g exceeds sqrt bound %g", m.tv,
              0.5 * std::sqrt(m.chi2 - 1.0));
    }
  }
  return c.result();
}

SuiteResult lemma2() {
  Checker c("lemma2");
  for (int d = 4; d <= 14; ++d) {
    for (double f : {1.0, 1.25, 1.5, 2.0}) {
      const double lambda = std::log(static_cast<double>(d)) / (d - 3) * f;
      c.check(lemma2_exact_V(d, lambda) <= lemma2_bound(d, lambda), "V(d=%g) = %g exceeds bound %g", d,
              lemma2_exact_V(d, lambda), lemma2_bound(d, lambda));
    }
    c.check(lemma2_exact_V(d, 0.0) == 1.0, "V(d=%g, 0) = %g != 1", d, lemma2_exact_V(d, 0.0));
  }
  return c.result();
}

SuiteResult appendix_sandwich() {
  Checker c("appendix-sandwich");
  for (int d = 4; d <= 14; ++d) {
    const double gate = std::log(d + 1.0) / (d - 2);
    for (double f : {1.0, 1.5, 2.0, 3.0}) {
      const auto s = clique_partition_sandwich(d, gate * f);
      c.check(s.ratio >= 1.0 && s.ratio <= s.upper, "sandwich at d=%g: ratio %g, upper %g", d, s.ratio, s.upper);
    }
  }
  for (int d = 1; d <= 14; ++d) {
    for (int k = 0; k <= 30; ++k) {
      const double lambda = 0.1 * k;
      const double gap = clipped_clique_log_partition(d, lambda) - clique_log_partition(d, lambda) + lambda;
      c.check(gap >= -1e-12, "Z' < e^-lambda Z at d=%g lambda=%g (log gap %g)", d, lambda, gap);
    }
  }
  for (int d = 1; d <= 14; ++d) {
    for (double lambda : {0.1, 0.5, 1.0, 2.0}) {
      const double series = clique_log_partition(d, lambda);
      const double brute = ising_log_partition(complete_graph_model(d + 1, lambda));
      c.check(std::abs(series - brute) <= 1e-12 * std::max(1.0, std::abs(brute)), "clique series %g vs enumeration %g (d=%g)",
              series, brute, d);
      const double clipped = clipped_clique_log_partition(d, lambda);
      const double clipped_brute = ising_log_partition(clipped_clique_model(d, lambda));
      c.check(std::abs(clipped - clipped_brute) <= 1e-12 * std::max(1.0, std::abs(clipped_brute)),
              "clipped series %g vs enumeration %g (d=%g)", clipped, clipped_brute, d);
    }
  }
  return c.result();
}

SuiteResult det_identities() {
  Checker c("det-identities");
  for (int p = 4; p <= 8; ++p) {
    std::vector<NodePair> pairs;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) pairs.push_back({i, j});
    for (double lambda : {0.05, 0.1, 0.2, 0.35}) {
      for (const auto& a : pairs) {
        for (const auto& b : pairs) {
          Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p, p);
          m(a.i, a.j) += lambda;
          m(a.j, a.i) += lambda;
          m(b.i, b.j) += lambda;
          m(b.j, b.i) += lambda;
          const double generic = m.determinant();
          const double closed = pairwise_delta_det(p, a, b, lambda);
          c.check(std::abs(generic - closed) <= 1e-12, "det mismatch: closed %g vs generic %g (p=%g)", closed, generic, p);
        }
      }
    }
  }
  return c.result();
}

SuiteResult chi2_oracles() {
  Checker c("chi2-oracles");
  for (int p = 2; p <= 4; ++p)
    for (long n = 1; n <= 3; ++n)
      for (double lambda : {0.3, 0.8, 1.5}) {
        const double exact = chi2_exact(ising_single_edge_ensemble(p, lambda), n);
        const double closed = chi2_ising_single_edge(n, p, lambda);
        c.check(std::abs(exact - closed) <= 1e-10, "single-edge chi2: exact %g vs closed %g (p=%g)", exact, closed, p);
      }
  for (int d = 1; d <= 3; ++d)
    for (int p = d + 1; p <= 8; ++p)
      for (long n = 0; p * n <= 12; ++n) {
        const auto e = ising_clique_ensemble(p, d, 0.9);
        const double exact = chi2_exact(e, n);
        const double lifted = *chi2_population(e, n);
        c.check(std::abs(exact - lifted) <= 1e-10 * exact, "lifted clique chi2: exact %g vs lifted %g (p=%g)", exact,
                lifted, p);
      }
  return c.result();
}

SuiteResult footnote_039() {
  Checker c("footnote-039");
  for (int k = 0; k <= 390; ++k) {
    const double lambda = 0.001 * k;
    const double l2 = lambda * lambda;
    const double lhs = std::log1p(-l2) - 0.5 * std::log1p(-4.0 * l2);
    c.check(lhs <= 2.0 * l2, "ln(1-l^2) - ln(1-4l^2)/2 = %g > 2 l^2 = %g at lambda %g", lhs, 2.0 * l2, lambda);
  }
  return c.result();
}

const std::vector<std::pair<std::string, std::function<SuiteResult()>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<SuiteResult()>>> suites{
      {"lemma1-chain", lemma1_chain},           {"lemma2", lemma2},
      {"appendix-sandwich", appendix_sandwich}, {"det-identities", det_identities},
      {"chi2-oracles", chi2_oracles},           {"footnote-039", footnote_039},
  };
  return suites;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<SuiteResult> run_verify(const std::string& suite) {
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : registry())
    if (suite == "all" || suite == name) out.push_back(fn());
  if (out.empty()) throw ValidationError("unknown verify suite '" + suite + "'");
  return out;
}

}  // namespace mrfcd
