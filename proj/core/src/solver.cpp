#include "ucom2/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "ucom2/rng.hpp"

namespace ucom2 {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class Comp, class PState>
DerandTrace run_derand(const Comp& comp, const PState& p, const SolveOptions& opts,
                       std::uint64_t seed) {
  switch (opts.derand) {
    case DerandMethod::kGreedy:
      return greedy_derandomize(comp, p);
    case DerandMethod::kGreedyNaive:
      return greedy_derandomize_naive(comp, p);
    case DerandMethod::kIterative: {
      Rng rng(seed);
      const auto order = rng.permutation(
          [&] {
            if constexpr (std::is_same_v<PState, ProbMatrix>) {
              return p.rows();
            } else {
              return p.size();
            }
          }());
      return iterative_rounding(comp, p, order);
    }
    case DerandMethod::kSample:
      return sample_derandomize(comp, p, opts.samples, seed);
  }
  return greedy_derandomize(comp, p);
}

}  // namespace

SolveOptions SolveOptions::fl_defaults() {
  SolveOptions opts;
  opts.optim.learning_rate = 0.1;
  opts.optim.init = InitKind::kCardinalityScaled;
  return opts;
}

SolveOptions SolveOptions::mc_defaults() {
  SolveOptions opts;
  opts.optim.learning_rate = 1e-5;
  opts.optim.init = InitKind::kCardinalityScaled;
  opts.beta = kDefaultBetaMc;
  return opts;
}

SolveOptions SolveOptions::rc_defaults() {
  SolveOptions opts;
  opts.optim.learning_rate = 0.1;
  opts.optim.init = InitKind::kRandom;
  opts.ensure_feasible = true;
  return opts;
}

SolveOutcome solve_fl(const FacilityInstance& inst, SolveOptions opts) {
  if (opts.optim.init == InitKind::kCardinalityScaled) {
    opts.optim.init_value =
        static_cast<double>(inst.k) / static_cast<double>(inst.n);
  }
  const PenaltyComposite comp = build_fl(inst, opts.beta);

  SolveOutcome outcome;
  const auto t0 = Clock::now();
  OptimResult opt = optimize_binary(comp, opts.optim);
  outcome.optimize_seconds = seconds_since(t0);
  outcome.continuous_loss = opt.best_loss;

  outcome.trace = run_derand(comp, opt.best_p, opts, opts.optim.seed);
  outcome.derand_seconds = outcome.trace.wall_time_s;
  outcome.decision = outcome.trace.final;
  outcome.report = evaluate_discrete(inst, outcome.decision);
  return outcome;
}

SolveOutcome solve_mc(const CoverageInstance& inst, SolveOptions opts) {
  if (opts.optim.init == InitKind::kCardinalityScaled) {
    opts.optim.init_value =
        static_cast<double>(inst.k) / static_cast<double>(inst.num_sets);
  }
  const PenaltyComposite comp = build_mc(inst, opts.beta);

  SolveOutcome outcome;
  const auto t0 = Clock::now();
  OptimResult opt = optimize_binary(comp, opts.optim);
  outcome.optimize_seconds = seconds_since(t0);
  outcome.continuous_loss = opt.best_loss;

  outcome.trace = run_derand(comp, opt.best_p, opts, opts.optim.seed);
  outcome.derand_seconds = outcome.trace.wall_time_s;
  outcome.decision = outcome.trace.final;
  outcome.report = evaluate_discrete(inst, outcome.decision);
  return outcome;
}

SolveOutcome solve_rc(const RobustColoringInstance& inst, SolveOptions opts) {
  const double beta = opts.beta >= 0.0 ? opts.beta : default_beta_rc(inst);
  const ColorPenaltyComposite comp = build_rc(inst, beta);

  SolveOutcome outcome;
  const auto t0 = Clock::now();
  ColorOptimResult opt = optimize_nonbinary(comp, opts.optim);
  outcome.optimize_seconds = seconds_since(t0);
  outcome.continuous_loss = opt.best_loss;

  const ColorPenaltyComposite* derand_comp = &comp;
  std::optional<ColorPenaltyComposite> raised;
  if (opts.ensure_feasible) {
    // If the optimized hard-conflict expectation g1 is below one, a hard
    // coefficient above f2 / (1 - g1) makes the greedy no-regression bound
    // force zero hard violations in the discrete output.
    const UncertainEdgeList ue = inst.edge_list();
    const auto [g1, f2] = colorwise_conflict_eval(ue, opt.best_p);
    if (g1 < 1.0) {
      const double needed = f2 / (1.0 - g1) + 1.0;
      if (needed > beta) {
        raised.emplace(build_rc(inst, needed));
        derand_comp = &*raised;
      }
    }
  }

  outcome.trace = run_derand(*derand_comp, opt.best_p, opts, opts.optim.seed);
  outcome.derand_seconds = outcome.trace.wall_time_s;
  outcome.decision = outcome.trace.final;
  outcome.report = evaluate_discrete(inst, outcome.decision);
  return outcome;
}

}  // namespace ucom2
