#include <doctest.h>

#include <cmath>

#include "mrfcd/ensembles.hpp"
#include "mrfcd/error.hpp"
#include "mrfcd/sampling.hpp"

using namespace mrfcd;

TEST_CASE("single edge Ising ensemble") {
  const auto e = ising_single_edge_ensemble(3, 0.5);
  REQUIRE(e.size() == 3);
  CHECK(e.ising().null_model.edges().empty());
  CHECK(e.ising().alternatives[0].graph() == std::vector<NodePair>{{0, 1}});
  CHECK(e.ising().alternatives[1].graph() == std::vector<NodePair>{{0, 2}});
  CHECK(e.ising().alternatives[2].graph() == std::vector<NodePair>{{1, 2}});
  CHECK(ising_single_edge_ensemble(100, 0.1).size() == 4950);
  const auto pair = ising_single_edge_ensemble(2, 0.4);
  for (const auto& q : pair.ising().alternatives) CHECK(class_membership(q, 2, 1, 0.4, 0.9));
  CHECK_THROWS_AS(ising_single_edge_ensemble(1, 0.5), ValidationError);
  CHECK(verify_structural_difference(e));
  CHECK(to_string(e.kind) == "ising-single-edge");
}

TEST_CASE("clique ensemble layout") {
  const auto e = ising_clique_ensemble(10, 4, 0.7);
  CHECK(e.params.r == 2);
  REQUIRE(e.size() == 2);
  CHECK(e.clipped_pairs == std::vector<NodePair>{{0, 1}, {5, 6}});
  const auto& null_model = e.ising().null_model;
  CHECK(null_model.edges().size() == 20);
  for (std::size_t mu = 0; mu < e.size(); ++mu) {
    const auto& q = e.ising().alternatives[mu];
    CHECK(q.edges().size() == 19);
    CHECK(q.weight(e.clipped_pairs[mu].i, e.clipped_pairs[mu].j) == 0.0);
    CHECK(class_membership(q, 10, 4, 0.7, 0.7));
  }
  CHECK(class_membership(null_model, 10, 4, 0.7, 0.7));
  CHECK(verify_structural_difference(e));

  const auto tail = ising_clique_ensemble(12, 4, 0.7);
  CHECK(tail.params.r == 2);
  CHECK(tail.ising().null_model.degrees()[10] == 0);
  CHECK(tail.ising().null_model.degrees()[11] == 0);

  const auto single = ising_clique_ensemble(5, 4, 0.7);
  REQUIRE(single.size() == 1);
  CHECK(single.ising().alternatives[0] == clipped_clique_model(4, 0.7));
  CHECK_THROWS_AS(ising_clique_ensemble(4, 4, 0.7), ValidationError);
  CHECK_THROWS_AS(ising_clique_ensemble(4, 0, 0.7), ValidationError);
}

TEST_CASE("Gaussian single edge ensemble") {
  const auto e = gaussian_single_edge_ensemble(3, 0.2);
  REQUIRE(e.size() == 3);
  for (const auto& q : e.gaussian().alternatives) CHECK(*gamma_of(q) == doctest::Approx(0.2));
  CHECK_THROWS_AS(gaussian_single_edge_ensemble(3, 0.5), ValidationError);
  CHECK_THROWS_AS(gaussian_single_edge_ensemble(3, -0.6), ValidationError);
  CHECK_NOTHROW(gaussian_single_edge_ensemble(2, 0.39));
  CHECK(verify_structural_difference(gaussian_single_edge_ensemble(5, -0.3)));
  const auto negative = gaussian_single_edge_ensemble(4, -0.3);
  for (const auto& q : negative.gaussian().alternatives) CHECK(*gamma_of(q) == doctest::Approx(0.3));
}

TEST_CASE("hand-built ensembles") {
  IsingModel p(3, {{0, 1, 0.4}});
  CHECK_FALSE(verify_structural_difference(custom_ensemble(p, {p})));
  // different weight, same graph: still not a structural change
  CHECK_FALSE(verify_structural_difference(custom_ensemble(p, {IsingModel(3, {{0, 1, 0.9}})})));
  CHECK(verify_structural_difference(custom_ensemble(p, {IsingModel(3, {})})));
  CHECK_THROWS_AS(custom_ensemble(p, {IsingModel(4, {})}), ValidationError);
  CHECK_THROWS_AS(custom_ensemble(p, std::vector<IsingModel>{}), ValidationError);
}

TEST_CASE("kind names round trip") {
  for (auto k : {EnsembleKind::ising_single_edge, EnsembleKind::ising_clique, EnsembleKind::gaussian_single_edge,
                 EnsembleKind::ising_custom, EnsembleKind::gaussian_custom})
    CHECK(ensemble_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(ensemble_kind_from_string("nope"), ValidationError);
}

TEST_CASE("ensemble sampler draws from the requested member") {
  const auto e = ising_clique_ensemble(10, 4, 1.0);
  EnsembleSampler s(e);
  CHECK(s.alternatives() == 2);
  Philox4x32 g(1, 0);
  const auto xs = s.alternative(1, 20000, g);
  // the clipped pair (5, 6) is less correlated than an intact pair (7, 8)
  double clipped = 0, intact = 0;
  for (std::size_t t = 0; t < xs.n(); ++t) {
    clipped += xs.at(t, 5) * xs.at(t, 6);
    intact += xs.at(t, 7) * xs.at(t, 8);
  }
  CHECK(clipped < intact);
  CHECK(null_stream(3) == 6);
  CHECK(alternative_stream(3) == 7);
}
