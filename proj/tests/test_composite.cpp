#include <doctest.h>

#include <cmath>
#include <memory>

#include "ucom2/oracle.hpp"
#include "ucom2/problems.hpp"
#include "ucom2/verify.hpp"

#include "test_util.hpp"

using namespace ucom2;

TEST_SUITE("composite") {

TEST_CASE("facility composite equals the oracle of its penalized objective") {
  // 3-node toy, checked against the brute-force expectation of the
  // independent discrete evaluator.
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.0, 0.0}, {1.0, 0.0}, {0.25, 0.6}}, 1);
  const double beta = 0.8;
  const PenaltyComposite comp = build_fl(inst, beta);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProbVector p = random_prob_vector(3, seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return testutil::fl_discrete(inst, beta, x); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("composite state value aggregates weighted term states") {
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.1, 0.2}, {0.8, 0.3}, {0.5, 0.9}, {0.2, 0.7}}, 2);
  const PenaltyComposite comp = build_fl(inst, 0.5);
  const ProbVector p = random_prob_vector(4, 21);
  auto state = comp.start(p);
  CHECK(state->value() == doctest::Approx(comp.eval(p)).epsilon(1e-12));
}

TEST_CASE("composite IDs are the weighted sums of term IDs") {
  const int n = 10;
  const auto comp = random_binary_composite(n, 5);
  const ProbVector p = random_prob_vector(n, 6);
  IdTable whole(n, 2);
  comp.ids(p, whole);
  IdTable sum(n, 2);
  IdTable one(n, 2);
  for (const auto& term : comp.terms()) {
    one.fill(0.0);
    term.condition->ids(p, one);
    for (std::size_t k = 0; k < sum.delta.size(); ++k) {
      sum.delta[k] += term.coeff * one.delta[k];
    }
  }
  for (std::size_t k = 0; k < sum.delta.size(); ++k) {
    CHECK(whole.delta[k] == doctest::Approx(sum.delta[k]).epsilon(1e-12));
  }
}

TEST_CASE("stateful and stateless ID paths agree") {
  const int n = 14;
  const auto comp = random_binary_composite(n, 8);
  const ProbVector p = random_prob_vector(n, 9);
  IdTable stateless(n, 2);
  comp.ids(p, stateless);
  IdTable stateful(n, 2);
  comp.start(p)->fill_ids(stateful);
  for (std::size_t k = 0; k < stateless.delta.size(); ++k) {
    CHECK(stateful.delta[k] == doctest::Approx(stateless.delta[k]).epsilon(1e-10));
  }

  const auto color = random_color_composite(9, 3, 10);
  const ProbMatrix pm = random_prob_matrix(9, 3, 11);
  IdTable c_stateless(9, 3);
  color.ids(pm, c_stateless);
  IdTable c_stateful(9, 3);
  color.start(pm)->fill_ids(c_stateful);
  for (std::size_t k = 0; k < c_stateless.delta.size(); ++k) {
    CHECK(c_stateful.delta[k] ==
          doctest::Approx(c_stateless.delta[k]).epsilon(1e-10));
  }
}

TEST_CASE("row queries match the full table") {
  const int n = 12;
  const auto comp = random_binary_composite(n, 13);
  const ProbVector p = random_prob_vector(n, 14);
  auto state = comp.start(p);
  IdTable table(n, 2);
  state->fill_ids(table);
  for (int i = 0; i < n; ++i) {
    double d0 = 0.0, d1 = 0.0;
    state->row_ids(i, d0, d1);
    CHECK(d0 == doctest::Approx(table.at(i, 0)).epsilon(1e-10));
    CHECK(d1 == doctest::Approx(table.at(i, 1)).epsilon(1e-10));
  }
}

TEST_CASE("non-binary multilinearity holds for color composites") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto comp = random_color_composite(8, 3, 400 + seed, seed == 0);
    const ProbMatrix p = random_prob_matrix(8, 3, 500 + seed);
    CHECK(max_multilinearity_error(comp, p) <= 1e-9);
  }
}

}  // TEST_SUITE
