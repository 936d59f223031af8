// Derandomization engines: incremental greedy, its naive re-evaluation twin,
// iterative rounding, and best-of-k random sampling. Greedy and iterative
// engines guarantee a discrete final state whose objective does not exceed
// the starting value; the greedy engine additionally terminates at a state
// no single local derandomization can improve.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ucom2/condition.hpp"
#include "ucom2/prob.hpp"

namespace ucom2 {

struct DerandStep {
  int node = 0;
  int value = 0;
  double delta = 0.0;  // incremental difference applied by this commit
};

struct DerandTrace {
  std::vector<DerandStep> steps;
  std::vector<double> objective_path;  // objective after each commit
  DiscreteDecision final;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  double wall_time_s = 0.0;
};

// Repeatedly commits the (node, value) pair with the smallest incremental
// difference among still-fractional rows until the state is discrete, then
// keeps committing strictly improving single-entry derandomizations until
// none remains, which certifies the flip-local-minimum guarantee.
// Ties break on the smallest delta, then node index, then value.
// Already-discrete inputs are returned unchanged with an empty trace.
DerandTrace greedy_derandomize(const PenaltyComposite& obj, const ProbVector& p0);
DerandTrace greedy_derandomize(const ColorPenaltyComposite& obj, const ProbMatrix& p0);

// Identical selection rule, but every candidate is scored by a full
// re-evaluation of the objective. Exists as the ablation twin of the
// incremental engine; with the shared tie-break both produce identical
// step sequences.
DerandTrace greedy_derandomize_naive(const PenaltyComposite& obj, const ProbVector& p0);
DerandTrace greedy_derandomize_naive(const ColorPenaltyComposite& obj, const ProbMatrix& p0);

// Visits nodes once in the given order, committing the best value per node.
DerandTrace iterative_rounding(const PenaltyComposite& obj, const ProbVector& p0,
                               std::span<const int> order);
DerandTrace iterative_rounding(const ColorPenaltyComposite& obj, const ProbMatrix& p0,
                               std::span<const int> order);

// Draws num_samples decisions from the product distribution and keeps the
// best penalized discrete objective. Deterministic per seed.
DerandTrace sample_derandomize(const PenaltyComposite& obj, const ProbVector& p0,
                               int num_samples, std::uint64_t seed);
DerandTrace sample_derandomize(const ColorPenaltyComposite& obj, const ProbMatrix& p0,
                               int num_samples, std::uint64_t seed);

}  // namespace ucom2
