#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>

#include "ucom2/oracle.hpp"
#include "ucom2/problems.hpp"
#include "ucom2/rng.hpp"
#include "ucom2/verify.hpp"

#include "test_util.hpp"

using namespace ucom2;

TEST_SUITE("problems") {

TEST_CASE("single-location instance scores zero at its own point") {
  const FacilityInstance inst = FacilityInstance::from_points({{0.4, 0.6}}, 1);
  const PenaltyComposite comp = build_fl(inst, 1.0);
  DiscreteDecision x;
  x.values = {1};
  CHECK(comp.eval(ProbVector::discrete(x)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("two adjacent corners of the unit square cost two") {
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, 2);
  DiscreteDecision x;
  x.values = {1, 1, 0, 0};
  const DiscreteReport report = evaluate_discrete(inst, x);
  CHECK(report.feasible);
  CHECK(report.objective == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("facility composite equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    std::vector<std::array<double, 2>> pts(7);
    for (auto& pt : pts) pt = {rng.uniform(), rng.uniform()};
    const FacilityInstance inst = FacilityInstance::from_points(std::move(pts), 3);
    const double beta = 0.5 + 0.3 * static_cast<double>(seed);
    const PenaltyComposite comp = build_fl(inst, beta);
    const ProbVector p = random_prob_vector(7, 90 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return testutil::fl_discrete(inst, beta, x); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("default facility beta scales with the instance") {
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, 2);
  CHECK(default_beta_fl(inst) > 0.0);
}

TEST_CASE("coverage composite pieces behave on the two-set toy") {
  CoverageInstance inst;
  inst.num_sets = 2;
  inst.num_items = 2;
  inst.k = 1;
  inst.weights = {3.0, 5.0};
  inst.sets = {{0}, {1}};
  const ProbVector p = ProbVector::clamped({0.5, 0.5});

  // The uncovered-weight term alone: 0.5*3 + 0.5*5.
  const auto covering = inst.item_sets();
  std::vector<NeighborList> targets;
  for (int j = 0; j < inst.num_items; ++j) targets.push_back({j, covering[j]});
  const WeightedCoverCondition uncovered(inst.num_sets, targets, inst.weights);
  CHECK(uncovered.eval(p) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("one set covering everything zeroes the uncovered mass") {
  CoverageInstance inst;
  inst.num_sets = 2;
  inst.num_items = 3;
  inst.k = 1;
  inst.weights = {1.0, 2.0, 4.0};
  inst.sets = {{0, 1, 2}, {1}};
  DiscreteDecision x;
  x.values = {1, 0};
  const DiscreteReport report = evaluate_discrete(inst, x);
  CHECK(report.feasible);
  CHECK(report.objective == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(report.detail("uncovered_weight") == doctest::Approx(0.0));
}

TEST_CASE("reported coverage complements the internal minimand") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(200 + seed);
    CoverageInstance inst;
    inst.num_sets = 6;
    inst.num_items = 8;
    inst.k = 2;
    for (int j = 0; j < inst.num_items; ++j) {
      inst.weights.push_back(static_cast<double>(rng.uniform_int(1, 9)));
    }
    for (int s = 0; s < inst.num_sets; ++s) {
      std::vector<int> items;
      for (int j = 0; j < inst.num_items; ++j) {
        if (rng.bernoulli(0.4)) items.push_back(j);
      }
      if (items.empty()) items.push_back(s % inst.num_items);
      inst.sets.push_back(std::move(items));
    }
    DiscreteDecision x;
    x.values.resize(6);
    for (auto& v : x.values) v = rng.bernoulli(0.4) ? 1 : 0;
    const DiscreteReport report = evaluate_discrete(inst, x);
    CHECK(report.objective + report.detail("uncovered_weight") ==
          doctest::Approx(inst.total_weight()).epsilon(1e-12));
  }
}

TEST_CASE("coverage composite equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(300 + seed);
    CoverageInstance inst;
    inst.num_sets = 7;
    inst.num_items = 5;
    inst.k = 3;
    for (int j = 0; j < inst.num_items; ++j) {
      inst.weights.push_back(rng.uniform(0.5, 4.0));
    }
    for (int s = 0; s < inst.num_sets; ++s) {
      std::vector<int> items;
      for (int j = 0; j < inst.num_items; ++j) {
        if (rng.bernoulli(0.5)) items.push_back(j);
      }
      if (items.empty()) items.push_back(0);
      inst.sets.push_back(std::move(items));
    }
    const double beta = 2.0;
    const PenaltyComposite comp = build_mc(inst, beta);
    const ProbVector p = random_prob_vector(7, 400 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return testutil::mc_discrete(inst, beta, x); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("empty sets are rejected") {
  CoverageInstance inst;
  inst.num_sets = 2;
  inst.num_items = 2;
  inst.k = 1;
  inst.weights = {1.0, 1.0};
  inst.sets = {{0}, {}};
  CHECK_THROWS_AS((void)build_mc(inst, 1.0), std::invalid_argument);
}

TEST_CASE("coloring composite on the one-hard-one-soft triangle") {
  RobustColoringInstance inst;
  inst.n = 3;
  inst.c = 2;
  const double soft_p = 0.4;
  inst.edges = {{0, 1, 1.0}, {1, 2, soft_p}};
  const double beta = 1.7;
  const ColorPenaltyComposite comp = build_rc(inst, beta);
  const ProbMatrix uniform = ProbMatrix::uniform(3, 2);
  const double expected = 0.5 * (-std::log1p(-soft_p)) + 0.5 * beta;
  CHECK(comp.eval(uniform) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("coloring with no soft edges has a pure conflict objective") {
  RobustColoringInstance inst;
  inst.n = 3;
  inst.c = 2;
  inst.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
  const ColorPenaltyComposite comp = build_rc(inst, 1.0);
  // A proper hard coloring zeroes the whole composite.
  DiscreteDecision x;
  x.num_choices = 2;
  x.values = {0, 1, 0};
  CHECK(comp.eval(ProbMatrix::discrete(x)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("coloring composite equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(500 + seed);
    RobustColoringInstance inst;
    inst.n = 5;
    inst.c = 3;
    for (int u = 0; u < inst.n; ++u) {
      for (int v = u + 1; v < inst.n; ++v) {
        if (rng.bernoulli(0.5)) {
          inst.edges.push_back(
              {u, v, rng.bernoulli(0.3) ? 1.0 : rng.uniform(0.05, 0.9)});
        }
      }
    }
    const double beta = 2.5;
    const ColorPenaltyComposite comp = build_rc(inst, beta);
    const ProbMatrix p = random_prob_matrix(5, 3, 600 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return testutil::rc_discrete(inst, beta, x); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("certain edges drop out of the robust clique uncertainty term") {
  RobustCliqueInstance inst;
  inst.n = 4;
  inst.k = 2;
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) inst.edges.push_back({u, v, 1.0});
  }
  const PenaltyComposite comp = build_rkc(inst, 1.0, 1.0);
  // Complete certain graph: the composite reduces to the cardinality term.
  const ProbVector p = random_prob_vector(4, 700);
  const CardinalityCondition card(CardinalitySet::exactly(2, 4));
  CHECK(comp.eval(p) == doctest::Approx(card.eval(p)).epsilon(1e-10));
}

TEST_CASE("robust clique composite equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(800 + seed);
    RobustCliqueInstance inst;
    inst.n = 6;
    inst.k = 3;
    for (int u = 0; u < inst.n; ++u) {
      for (int v = u + 1; v < inst.n; ++v) {
        if (rng.bernoulli(0.6)) {
          inst.edges.push_back({u, v, rng.uniform(0.2, 1.0)});
        }
      }
    }
    const double b1 = 1.5, b2 = 2.0;
    const PenaltyComposite comp = build_rkc(inst, b1, b2);
    const ProbVector p = random_prob_vector(6, 900 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) {
          return testutil::rkc_discrete(inst, b1, b2, x);
        },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("a certain neighbor dominates its endpoint") {
  RobustDominatingSetInstance inst;
  inst.n = 3;
  inst.k = 1;
  inst.edges = {{0, 1, 1.0}, {1, 2, 0.5}};
  DiscreteDecision x;
  x.values = {0, 1, 0};  // choose the middle node
  const DiscreteReport report = evaluate_discrete(inst, x);
  CHECK(report.feasible);
  // Node 0 is uncoverable only if its certain edge fails, which it cannot.
  CHECK(report.objective == doctest::Approx(0.0 + 0.5).epsilon(1e-12));
}

TEST_CASE("dominating set composite equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(1000 + seed);
    RobustDominatingSetInstance inst;
    inst.n = 7;
    inst.k = 2;
    for (int u = 0; u < inst.n; ++u) {
      for (int v = u + 1; v < inst.n; ++v) {
        if (rng.bernoulli(0.4)) {
          inst.edges.push_back({u, v, rng.uniform(0.1, 1.0)});
        }
      }
    }
    const double beta = 1.2;
    const PenaltyComposite comp = build_rds(inst, beta);
    const ProbVector p = random_prob_vector(7, 1100 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return testutil::rds_discrete(inst, beta, x); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("clique cover on two disjoint cliques") {
  // Nodes {0,1} and {2,3} each form a clique; the exact partition uses both
  // groups, so the composite value there is the number of groups in use.
  CliqueCoverInstance inst;
  inst.n = 4;
  inst.c = 2;
  inst.edges = {{0, 1}, {2, 3}};
  const ColorPenaltyComposite comp = build_cc(inst, 1.0);
  DiscreteDecision partition;
  partition.num_choices = 2;
  partition.values = {0, 0, 1, 1};
  CHECK(comp.eval(ProbMatrix::discrete(partition)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  const DiscreteReport report = evaluate_discrete(inst, partition);
  CHECK(report.feasible);
  CHECK(report.detail("violating_pairs") == 0.0);
  CHECK(report.detail("groups_used") == 2.0);

  // No assignment does better: some group is non-empty, and a single group
  // cannot be a clique here.
  double best = std::numeric_limits<double>::infinity();
  DiscreteDecision x;
  x.num_choices = 2;
  x.values = {0, 0, 0, 0};
  for (int mask = 0; mask < 16; ++mask) {
    for (int i = 0; i < 4; ++i) x.values[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    best = std::min(best, comp.eval(ProbMatrix::discrete(x)));
  }
  CHECK(best == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("clique cover composite equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(1200 + seed);
    CliqueCoverInstance inst;
    inst.n = 5;
    inst.c = 3;
    for (int u = 0; u < inst.n; ++u) {
      for (int v = u + 1; v < inst.n; ++v) {
        if (rng.bernoulli(0.5)) inst.edges.emplace_back(u, v);
      }
    }
    const double beta = 1.0;
    const ColorPenaltyComposite comp = build_cc(inst, beta);
    const ProbMatrix p = random_prob_matrix(5, 3, 1300 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return testutil::cc_discrete(inst, beta, x); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("layered tree composite equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(1400 + seed);
    LayeredMstInstance inst;
    inst.n = 4;
    inst.c = 3;
    inst.edges = {{0, 1, 0.3}, {1, 2, 0.8}, {2, 3, 0.2}, {0, 3, 1.1}, {0, 2, 0.9}};
    const double beta = 1.6;
    const ColorPenaltyComposite comp = build_mst(inst, beta);
    const ProbMatrix p = random_prob_matrix(4, 3, 1500 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return testutil::mst_discrete(inst, beta, x); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("layered tree evaluator scores a valid chain") {
  LayeredMstInstance inst;
  inst.n = 3;
  inst.c = 3;
  inst.edges = {{0, 1, 0.5}, {1, 2, 0.7}};
  DiscreteDecision x;
  x.num_choices = 3;
  x.values = {0, 1, 2};
  const DiscreteReport report = evaluate_discrete(inst, x);
  CHECK(report.feasible);
  CHECK(report.objective == doctest::Approx(1.2).epsilon(1e-12));

  // Breaking the chain strands node 2.
  x.values = {0, 0, 2};
  const DiscreteReport broken = evaluate_discrete(inst, x);
  CHECK(!broken.feasible);
  CHECK(std::isinf(broken.objective));
}

TEST_CASE("infeasible cardinality yields the infinity sentinel") {
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.0, 0.0}, {1.0, 1.0}}, 1);
  DiscreteDecision x;
  x.values = {0, 0};
  const DiscreteReport report = evaluate_discrete(inst, x);
  CHECK(!report.feasible);
  CHECK(std::isinf(report.objective));
}

TEST_CASE("coloring evaluator counts hard violations") {
  RobustColoringInstance inst;
  inst.n = 2;
  inst.c = 2;
  inst.edges = {{0, 1, 1.0}};
  DiscreteDecision x;
  x.num_choices = 2;
  x.values = {1, 1};
  const DiscreteReport report = evaluate_discrete(inst, x);
  CHECK(!report.feasible);
  CHECK(report.detail("hard_violations") == 1.0);
}

}  // TEST_SUITE
