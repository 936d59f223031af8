#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "ucom2/condition.hpp"
#include "ucom2/conditions.hpp"
#include "ucom2/oracle.hpp"
#include "ucom2/prob.hpp"
#include "ucom2/verify.hpp"

using namespace ucom2;

TEST_SUITE("prob") {

TEST_CASE("derandomize_entry fixes one entry and keeps the rest") {
  const ProbVector p = ProbVector::clamped({0.5, 0.5});
  const ProbVector q = derandomize_entry(p, 0, 1);
  CHECK(q[0] == 1.0);
  CHECK(q[1] == 0.5);
  CHECK(q.is_discrete(0));
  CHECK(!q.is_discrete(1));
}

TEST_CASE("derandomizing an already-discrete entry to its value is a no-op") {
  ProbVector p = ProbVector::clamped({0.5, 0.5});
  p.set_discrete(0, 1);
  const ProbVector q = derandomize_entry(p, 0, 1);
  CHECK(q.entries() == p.entries());
}

TEST_CASE("matrix derandomization produces a one-hot row") {
  const ProbMatrix p = ProbMatrix::clamped(2, 2, {0.3, 0.7, 0.4, 0.6});
  const ProbMatrix q = derandomize_entry(p, 0, 0);
  CHECK(q.at(0, 0) == 1.0);
  CHECK(q.at(0, 1) == 0.0);
  CHECK(q.at(1, 0) == doctest::Approx(0.4));
  CHECK(q.row_discrete(0));
  CHECK(!q.row_discrete(1));
}

TEST_CASE("derandomize rejects out-of-range arguments") {
  const ProbVector p = ProbVector::clamped({0.5});
  CHECK_THROWS_AS((void)derandomize_entry(p, 1, 0), std::out_of_range);
  CHECK_THROWS_AS((void)derandomize_entry(p, 0, 2), std::out_of_range);
  const ProbMatrix m = ProbMatrix::uniform(2, 3);
  CHECK_THROWS_AS((void)derandomize_entry(m, 2, 0), std::out_of_range);
  CHECK_THROWS_AS((void)derandomize_entry(m, 0, 3), std::out_of_range);
}

TEST_CASE("clamp moves endpoints into the margin") {
  const double eps = 1e-6;
  const ProbVector p = clamp({0.0, 1.0, 0.5}, eps);
  CHECK(p[0] == eps);
  CHECK(p[1] == 1.0 - eps);
  CHECK(p[2] == 0.5);
}

TEST_CASE("clamp leaves interior points unchanged") {
  const ProbVector p = clamp({0.3, 0.7});
  CHECK(p[0] == 0.3);
  CHECK(p[1] == 0.7);
}

TEST_CASE("matrix clamp renormalizes rows after clamping") {
  const ProbMatrix p = clamp(1, 3, {1.0, 0.0, 0.0}, 0.01);
  // Clamp gives (0.99, 0.01, 0.01); the row then divides by its sum 1.01.
  CHECK(p.at(0, 0) == doctest::Approx(0.99 / 1.01).epsilon(1e-12));
  CHECK(p.at(0, 1) == doctest::Approx(0.01 / 1.01).epsilon(1e-12));
  CHECK(p.at(0, 2) == doctest::Approx(0.01 / 1.01).epsilon(1e-12));
  double sum = 0.0;
  for (int r = 0; r < 3; ++r) sum += p.at(0, r);
  CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("clamp is a projection") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProbVector once = random_prob_vector(13, seed);
    const ProbVector twice = ProbVector::clamped(once.entries(), once.eps());
    CHECK(once.entries() == twice.entries());

    const ProbMatrix m_once = random_prob_matrix(7, 3, seed);
    const ProbMatrix m_twice = ProbMatrix::clamped(7, 3, m_once.data(), m_once.eps());
    for (std::size_t k = 0; k < m_once.data().size(); ++k) {
      CHECK(m_twice.data()[k] == doctest::Approx(m_once.data()[k]).epsilon(1e-14));
    }
  }
}

TEST_CASE("clamp validates its inputs") {
  CHECK_THROWS_AS((void)clamp({0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)clamp({0.5}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)clamp({1.5}), std::invalid_argument);
  CHECK_THROWS_AS((void)clamp({-0.1}), std::invalid_argument);
  CHECK_THROWS_AS((void)clamp({}), std::invalid_argument);
}

TEST_CASE("matrix rows sum to one within 1e-12") {
  const ProbMatrix p = random_prob_matrix(20, 4, 3);
  for (int i = 0; i < p.rows(); ++i) {
    double sum = 0.0;
    for (int r = 0; r < p.cols(); ++r) sum += p.at(i, r);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("oracle expectation normalizes") {
  const ProbVector p = ProbVector::clamped({0.3, 0.9});
  CHECK(oracle_expectation([](const DiscreteDecision&) { return 1.0; }, p) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("oracle expectation recovers marginals and products") {
  const ProbVector p = ProbVector::clamped({0.3, 0.9});
  const double first = oracle_expectation(
      [](const DiscreteDecision& x) { return static_cast<double>(x.values[0]); }, p);
  CHECK(first == doctest::Approx(0.3).epsilon(1e-12));
  const double both = oracle_expectation(
      [](const DiscreteDecision& x) {
        return static_cast<double>(x.values[0] * x.values[1]);
      },
      p);
  CHECK(both == doctest::Approx(0.27).epsilon(1e-12));
}

TEST_CASE("oracle expectation enforces the enumeration guard") {
  CHECK_THROWS_AS(
      (void)oracle_expectation([](const DiscreteDecision&) { return 0.0; },
                               ProbVector::constant(21, 0.5)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)oracle_expectation([](const DiscreteDecision&) { return 0.0; },
                               ProbMatrix::uniform(14, 3)),
      std::invalid_argument);
}

TEST_CASE("non-binary oracle expectation matches row marginals") {
  const ProbMatrix p = random_prob_matrix(5, 3, 17);
  const double got = oracle_expectation(
      [](const DiscreteDecision& x) { return x.values[2] == 1 ? 1.0 : 0.0; }, p);
  CHECK(got == doctest::Approx(p.at(2, 1)).epsilon(1e-12));
}

TEST_CASE("composite with a single unit-coefficient term matches the term") {
  const int n = 8;
  auto term = std::make_shared<LinearCondition>(
      std::vector<double>{1, -2, 3, -4, 5, -6, 7, -8}, 0.5);
  const PenaltyComposite comp({{term, 1.0}});
  const ProbVector p = random_prob_vector(n, 5);
  CHECK(comp.eval(p) == doctest::Approx(term->eval(p)).epsilon(1e-14));

  IdTable lhs(n, 2), rhs(n, 2);
  comp.ids(p, lhs);
  term->ids(p, rhs);
  CHECK(lhs.delta == rhs.delta);
}

TEST_CASE("zero-coefficient terms vanish from the combination") {
  const int n = 6;
  auto a = std::make_shared<LinearCondition>(std::vector<double>(n, 2.0), 0.0);
  auto b = std::make_shared<LinearCondition>(std::vector<double>(n, -7.0), 3.0);
  const PenaltyComposite both({{a, 1.0}, {b, 0.0}});
  const PenaltyComposite only_a({{a, 1.0}});
  const ProbVector p = random_prob_vector(n, 9);
  CHECK(both.eval(p) == doctest::Approx(only_a.eval(p)).epsilon(1e-14));
}

TEST_CASE("composite rejects dimension mismatches and bad coefficients") {
  auto small = std::make_shared<LinearCondition>(std::vector<double>(3, 1.0));
  auto large = std::make_shared<LinearCondition>(std::vector<double>(4, 1.0));
  CHECK_THROWS_AS(PenaltyComposite({{small, 1.0}, {large, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PenaltyComposite({{small, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PenaltyComposite({}), std::invalid_argument);
}

TEST_CASE("multilinearity holds for random composites") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto comp = random_binary_composite(10, seed);
    const ProbVector p = random_prob_vector(10, 100 + seed);
    CHECK(max_multilinearity_error(comp, p) <= 1e-9);
  }
}

TEST_CASE("composite expectation equals the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto comp = random_binary_composite(7, seed);
    const ProbVector p = random_prob_vector(7, 40 + seed);
    const double direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return comp.eval(ProbVector::discrete(x)); },
        p);
    CHECK(comp.eval(p) == doctest::Approx(direct).epsilon(1e-11));
  }
}

}  // TEST_SUITE
