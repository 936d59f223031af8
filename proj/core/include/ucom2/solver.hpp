// End-to-end solve pipelines: continuous optimization of the penalty
// composite followed by derandomization, with the two phases timed
// separately.
#pragma once

#include "ucom2/derand.hpp"
#include "ucom2/optim.hpp"
#include "ucom2/problems.hpp"

namespace ucom2 {

enum class DerandMethod { kGreedy, kGreedyNaive, kIterative, kSample };

struct SolveOptions {
  OptimConfig optim;
  double beta = -1.0;  // negative selects the per-problem default
  DerandMethod derand = DerandMethod::kGreedy;
  int samples = 1000;  // for DerandMethod::kSample
  // Raise the constraint coefficient for the derandomization phase just
  // enough that the no-regression guarantee forces a feasible discrete
  // output (possible whenever the optimized constraint expectation is
  // below one). Used by robust coloring, where hard feasibility is part of
  // the output contract.
  bool ensure_feasible = false;

  // Per-problem defaults mirroring the tuned settings: learning rate,
  // constraint coefficient, and initialization.
  static SolveOptions fl_defaults();
  static SolveOptions mc_defaults();
  static SolveOptions rc_defaults();
};

struct SolveOutcome {
  DiscreteDecision decision;
  DiscreteReport report;
  DerandTrace trace;
  double continuous_loss = 0.0;  // composite value of the optimized state
  double optimize_seconds = 0.0;
  double derand_seconds = 0.0;
};

SolveOutcome solve_fl(const FacilityInstance& inst, SolveOptions opts);
SolveOutcome solve_mc(const CoverageInstance& inst, SolveOptions opts);
SolveOutcome solve_rc(const RobustColoringInstance& inst, SolveOptions opts);

}  // namespace ucom2
