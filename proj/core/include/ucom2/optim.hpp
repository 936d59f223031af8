// Transductive continuous optimization of decision probabilities: projected
// gradient descent over the clamp box for binary decisions, softmax-of-logits
// ascent for non-binary ones. Gradients come from the same incremental
// difference machinery used by derandomization.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ucom2/condition.hpp"
#include "ucom2/prob.hpp"

namespace ucom2 {

enum class InitKind {
  kUniformHalf,        // p = 1/2 (binary) or uniform rows (non-binary)
  kCardinalityScaled,  // p = init_value everywhere, typically k/n
  kRandom,             // uniform random entries, seeded
};

struct OptimConfig {
  double learning_rate = 0.1;
  int max_iters = 500;
  InitKind init = InitKind::kUniformHalf;
  double init_value = 0.5;  // used by kCardinalityScaled
  int restarts = 1;         // restart 0 uses init; later restarts draw random inits
  double eps = kDefaultEps;
  bool backtracking = true;  // fixed-step plain gradient descent when off
  std::uint64_t seed = 0;
  // Stop when the loss improved by less than rel_improvement_stop (relative)
  // over the last stop_window iterations.
  double rel_improvement_stop = 1e-7;
  int stop_window = 50;

  void validate() const;
};

struct OptimResult {
  ProbVector best_p;
  std::vector<double> loss_path;        // best restart, value per iteration
  std::vector<double> restart_losses;   // final loss of each restart
  double best_loss = 0.0;
};

struct ColorOptimResult {
  ProbMatrix best_p;
  std::vector<double> loss_path;
  std::vector<double> restart_losses;
  double best_loss = 0.0;
};

// Analytic gradient from incremental differences.
// Binary, via the multilinear identity f(p) = p_i f(der(i,1)) + (1-p_i) f(der(i,0)):
//   df/dp_i = Delta(i, 1, p) - Delta(i, 0, p).
// Non-binary, with f(p) = sum_r p_ir f(der(i,r;p)):
//   df/dp_ir = Delta(i, r, p) + f(p)   (row-major n*c output; the common
//   per-row constant is immaterial after the softmax chain rule).
std::vector<double> grad_from_ids(const PenaltyComposite& obj, const ProbVector& p);
std::vector<double> grad_from_ids(const ColorPenaltyComposite& obj, const ProbMatrix& p);

// Halves the step until the objective decreases (at most 20 halvings);
// returns p unchanged if no tried step improves.
ProbVector line_search_backtrack(const PenaltyComposite& obj, const ProbVector& p,
                                 std::span<const double> grad, double lr0);

OptimResult optimize_binary(const PenaltyComposite& obj, const OptimConfig& cfg);
ColorOptimResult optimize_nonbinary(const ColorPenaltyComposite& obj,
                                    const OptimConfig& cfg);

}  // namespace ucom2
