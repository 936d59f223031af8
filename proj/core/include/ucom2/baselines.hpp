// Classical baselines for head-to-head comparisons: deterministic greedy
// facility location and maximum coverage, permutation-sampling robust
// coloring, and uniform random selection.
#pragma once

#include <cstdint>

#include "ucom2/problems.hpp"

namespace ucom2 {

struct BaselineResult {
  DiscreteDecision decision;
  double objective = 0.0;
  bool feasible = false;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  int rounds_run = 0;
};

// Budget for sampling baselines. A positive `rounds` runs exactly that many
// rounds (bit-reproducible per seed); otherwise the baseline keeps sampling
// until `seconds` of wall time have elapsed, always finishing at least one
// round.
struct Budget {
  double seconds = 0.0;
  int rounds = 0;

  static Budget fixed_rounds(int r) { return Budget{0.0, r}; }
  static Budget wall_clock(double s) { return Budget{s, 0}; }
};

// Adds the location that most reduces the total min-distance, k times.
// Ties break on the lowest index.
BaselineResult greedy_fl(const FacilityInstance& inst);

// k rounds of maximum marginal covered weight; ties break on lowest index.
BaselineResult greedy_mc(const CoverageInstance& inst);

// Random node permutations; per node the color minimizing
// (hard violations, soft penalty) lexicographically. Keeps the best run.
BaselineResult greedy_rd_coloring(const RobustColoringInstance& inst, Budget budget,
                                  std::uint64_t seed);

// Uniform random k-subsets, best objective kept.
BaselineResult random_select(const FacilityInstance& inst, Budget budget,
                             std::uint64_t seed);
BaselineResult random_select(const CoverageInstance& inst, Budget budget,
                             std::uint64_t seed);

}  // namespace ucom2
