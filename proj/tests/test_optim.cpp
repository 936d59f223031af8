#include <doctest.h>

#include <cmath>
#include <memory>

#include "ucom2/conditions.hpp"
#include "ucom2/optim.hpp"
#include "ucom2/problems.hpp"
#include "ucom2/verify.hpp"

#include "test_util.hpp"

using namespace ucom2;

TEST_SUITE("optim") {

TEST_CASE("gradient of a linear objective is its coefficient vector") {
  const std::vector<double> coeffs{0.3, -1.2, 2.5, 0.0};
  const PenaltyComposite comp(
      {{std::make_shared<LinearCondition>(coeffs, 1.0), 1.0}});
  const auto grad = grad_from_ids(comp, random_prob_vector(4, 1));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    CHECK(grad[i] == doctest::Approx(coeffs[i]).epsilon(1e-12));
  }
}

TEST_CASE("constant objectives have zero gradient") {
  const PenaltyComposite comp(
      {{std::make_shared<LinearCondition>(std::vector<double>(5, 0.0), 3.0), 1.0}});
  for (double g : grad_from_ids(comp, random_prob_vector(5, 2))) {
    CHECK(g == 0.0);
  }
}

TEST_CASE("analytic gradient matches central finite differences") {
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.1, 0.1}, {0.9, 0.2}, {0.4, 0.8}, {0.7, 0.7}, {0.2, 0.5}}, 2);
  const PenaltyComposite comp = build_fl(inst, 0.7);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProbVector p = random_prob_vector(5, 10 + seed);
    const auto grad = grad_from_ids(comp, p);
    const auto fd = testutil::fd_gradient(comp, p, 1e-5);
    CHECK(testutil::gradient_error(grad, fd) <= 1e-5);
  }
}

TEST_CASE("non-binary gradient matches finite differences") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto comp = random_color_composite(7, 3, 30 + seed);
    const ProbMatrix p = random_prob_matrix(7, 3, 40 + seed);
    const auto grad = grad_from_ids(comp, p);
    const auto fd = testutil::fd_gradient(comp, p, 1e-5);
    CHECK(testutil::gradient_error(grad, fd) <= 1e-5);
  }
}

TEST_CASE("zero gradient keeps the state fixed") {
  const PenaltyComposite comp(
      {{std::make_shared<LinearCondition>(std::vector<double>(6, 0.0), 1.0), 1.0}});
  OptimConfig cfg;
  cfg.max_iters = 25;
  const OptimResult result = optimize_binary(comp, cfg);
  for (int i = 0; i < 6; ++i) CHECK(result.best_p[i] == 0.5);
}

TEST_CASE("bilinear objective converges to its best corner") {
  // f = p0 p1 - 0.6 p0 - 0.3 p1; corner values 0, -0.6, -0.3, 0.1.
  const int n = 2;
  const PenaltyComposite comp({
      {std::make_shared<PairProductCondition>(
           n, std::vector<std::pair<int, int>>{{0, 1}}, std::vector<double>{1.0}),
       1.0},
      {std::make_shared<LinearCondition>(std::vector<double>{-0.6, -0.3}), 1.0},
  });
  OptimConfig cfg;
  cfg.learning_rate = 0.3;
  cfg.max_iters = 3000;
  cfg.stop_window = 3000;  // run to the boundary
  const OptimResult result = optimize_binary(comp, cfg);
  CHECK(std::abs(result.best_p[0] - (1.0 - cfg.eps)) <= 1e-6);
  CHECK(std::abs(result.best_p[1] - cfg.eps) <= 1e-6);
}

TEST_CASE("descent on the facility toy beats the uniform start") {
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, 2);
  const PenaltyComposite comp = build_fl(inst, 1.0);
  OptimConfig cfg;
  cfg.learning_rate = 0.1;
  cfg.max_iters = 200;
  const double start = comp.eval(ProbVector::constant(4, 0.5));
  const OptimResult result = optimize_binary(comp, cfg);
  CHECK(result.best_loss <= start);
  CHECK(result.loss_path.back() == doctest::Approx(result.best_loss));
}

TEST_CASE("loss path is non-increasing with backtracking") {
  const auto comp = random_binary_composite(12, 50);
  OptimConfig cfg;
  cfg.learning_rate = 0.5;
  cfg.max_iters = 120;
  const OptimResult result = optimize_binary(comp, cfg);
  for (std::size_t t = 1; t < result.loss_path.size(); ++t) {
    CHECK(result.loss_path[t] <= result.loss_path[t - 1]);
  }
}

TEST_CASE("optimized states stay inside the clamp box") {
  const auto comp = random_binary_composite(15, 60);
  OptimConfig cfg;
  cfg.learning_rate = 1.0;
  cfg.max_iters = 150;
  cfg.restarts = 2;
  const OptimResult result = optimize_binary(comp, cfg);
  for (int i = 0; i < 15; ++i) {
    CHECK(result.best_p[i] >= cfg.eps);
    CHECK(result.best_p[i] <= 1.0 - cfg.eps);
  }
  CHECK(result.restart_losses.size() == 2);
}

TEST_CASE("two-node hard conflict separates into different colors") {
  RobustColoringInstance inst;
  inst.n = 2;
  inst.c = 2;
  inst.edges = {{0, 1, 1.0}};
  const ColorPenaltyComposite comp = build_rc(inst, 1.0);
  OptimConfig cfg;
  cfg.learning_rate = 0.5;
  cfg.max_iters = 400;
  cfg.restarts = 3;
  cfg.init = InitKind::kRandom;
  cfg.seed = 7;
  const ColorOptimResult result = optimize_nonbinary(comp, cfg);
  CHECK(result.best_loss <= 1e-3);  // hard-conflict expectation at the optimum
}

TEST_CASE("softmax rows stay stochastic after every step") {
  const auto comp = random_color_composite(9, 4, 70);
  OptimConfig cfg;
  cfg.learning_rate = 0.3;
  cfg.max_iters = 80;
  const ColorOptimResult result = optimize_nonbinary(comp, cfg);
  for (int i = 0; i < 9; ++i) {
    double sum = 0.0;
    for (int r = 0; r < 4; ++r) sum += result.best_p.at(i, r);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
  for (std::size_t t = 1; t < result.loss_path.size(); ++t) {
    CHECK(result.loss_path[t] <= result.loss_path[t - 1]);
  }
}

TEST_CASE("line search returns the input when the gradient is zero") {
  const PenaltyComposite comp(
      {{std::make_shared<LinearCondition>(std::vector<double>(4, 0.0), 2.0), 1.0}});
  const ProbVector p = random_prob_vector(4, 80);
  const std::vector<double> zero(4, 0.0);
  const ProbVector out = line_search_backtrack(comp, p, zero, 0.5);
  CHECK(out.entries() == p.entries());
}

TEST_CASE("line search recovers from an oversized step") {
  const FacilityInstance inst = FacilityInstance::from_points(
      {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, 2);
  const PenaltyComposite comp = build_fl(inst, 1.0);
  const ProbVector p = ProbVector::constant(4, 0.5);
  const auto grad = grad_from_ids(comp, p);
  const ProbVector out = line_search_backtrack(comp, p, grad, 1e6);
  CHECK(comp.eval(out) < comp.eval(p));
}

TEST_CASE("config validation rejects nonsense") {
  OptimConfig cfg;
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimConfig{};
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // TEST_SUITE
