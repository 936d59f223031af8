#include "ucom2/derand.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <type_traits>

#include "ucom2/errors.hpp"
#include "ucom2/parallel.hpp"
#include "ucom2/rng.hpp"

namespace ucom2 {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class PState>
bool row_is_discrete(const PState& p, int i) {
  if constexpr (std::is_same_v<PState, ProbMatrix>) {
    return p.row_discrete(i);
  } else {
    return p.is_discrete(i);
  }
}

template <class PState>
int state_size(const PState& p) {
  if constexpr (std::is_same_v<PState, ProbMatrix>) {
    return p.rows();
  } else {
    return p.size();
  }
}

template <class PState>
int state_choices(const PState& p) {
  if constexpr (std::is_same_v<PState, ProbMatrix>) {
    return p.cols();
  } else {
    (void)p;
    return 2;
  }
}

// Commits (i, x) on the live state and notifies the composite state with the
// pre-commit value.
template <class CompState, class PState>
void commit_step(CompState& state, PState& p, int i, int x) {
  if constexpr (std::is_same_v<PState, ProbMatrix>) {
    std::vector<double> old_row(p.row(i), p.row(i) + p.cols());
    p.set_discrete(i, x);
    state.commit(i, x, old_row.data());
  } else {
    const double old_pi = p[i];
    p.set_discrete(i, x);
    state.commit(i, x, old_pi);
  }
}

struct Candidate {
  double delta = std::numeric_limits<double>::infinity();
  int node = -1;
  int value = 0;

  bool better_than(const Candidate& other) const {
    if (delta != other.delta) return delta < other.delta;
    if (node != other.node) return node < other.node;
    return value < other.value;
  }
};

// Argmin over fractional rows with the shared (delta, node, value) tie-break.
template <class PState>
Candidate pick_best(const IdTable& ids, const PState& p) {
  Candidate best;
  const int n = ids.n;
  for (int i = 0; i < n; ++i) {
    if (row_is_discrete(p, i)) continue;
    for (int x = 0; x < ids.c; ++x) {
      const double d = ids.at(i, x);
      if (std::isnan(d)) {
        throw NumericError("NaN encountered in incremental differences");
      }
      Candidate cand{d, i, x};
      if (cand.better_than(best)) best = cand;
    }
  }
  return best;
}

template <class Comp, class PState>
void flip_to_local_minimum(const Comp& obj, PState& p, DerandTrace& trace);

template <class Comp, class PState>
DerandTrace greedy_incremental(const Comp& obj, PState p) {
  const auto start_time = Clock::now();
  auto state = obj.start(p);

  DerandTrace trace;
  trace.initial_objective = state->value();
  double running = trace.initial_objective;

  IdTable ids(state_size(p), state_choices(p));
  int remaining = p.num_fractional();
  const bool started_discrete = remaining == 0;
  while (remaining > 0) {
    ids.fill(0.0);
    state->fill_ids(ids);
    const Candidate best = pick_best(ids, p);
    commit_step(*state, p, best.node, best.value);
    running += best.delta;
    trace.steps.push_back({best.node, best.value, best.delta});
    trace.objective_path.push_back(running);
    --remaining;
  }
  // Already-discrete inputs pass through untouched; otherwise walk to a
  // flip-local minimum so the greedy guarantees hold at the final state.
  if (!started_discrete) flip_to_local_minimum(obj, p, trace);

  trace.final = p.to_decision();
  trace.final_objective = obj.eval(p);
  trace.wall_time_s = seconds_since(start_time);
  return trace;
}

// Scores one candidate by full re-evaluation on a scratch copy.
template <class Comp, class PState>
double naive_delta(const Comp& obj, PState& scratch, const PState& p, int i,
                   int x, double base) {
  if constexpr (std::is_same_v<PState, ProbMatrix>) {
    scratch.set_discrete(i, x);
    const double value = obj.eval(scratch);
    scratch.set_row_raw(i, p.row(i));
    return value - base;
  } else {
    scratch.set_discrete(i, x);
    const double value = obj.eval(scratch);
    scratch.set_raw(i, p[i]);
    return value - base;
  }
}

// Evaluates f(der(i, x; p)) - base for a list of candidates, fanning out
// across threads with one scratch copy per block.
template <class Comp, class PState>
void scan_candidates(const Comp& obj, const PState& p,
                     const std::vector<std::pair<int, int>>& candidates,
                     double base, std::vector<double>& deltas) {
  deltas.assign(candidates.size(), 0.0);
  const int count = static_cast<int>(candidates.size());
  const int blocks = std::min(thread_count(), std::max(count, 1));
  const int per_block = (count + blocks - 1) / std::max(blocks, 1);
  std::vector<std::thread> pool;
  for (int b = 0; b < blocks; ++b) {
    const int lo = b * per_block;
    const int hi = std::min(count, lo + per_block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      PState scratch = p;
      for (int f = lo; f < hi; ++f) {
        deltas[static_cast<std::size_t>(f)] =
            naive_delta(obj, scratch, p, candidates[static_cast<std::size_t>(f)].first,
                        candidates[static_cast<std::size_t>(f)].second, base);
      }
    });
  }
  for (auto& t : pool) t.join();
}

template <class PState>
int current_value(const PState& p, int i) {
  if constexpr (std::is_same_v<PState, ProbMatrix>) {
    for (int x = 0; x < p.cols(); ++x) {
      if (p.at(i, x) == 1.0) return x;
    }
    return 0;
  } else {
    return p[i] == 1.0 ? 1 : 0;
  }
}

// Continues the greedy process past discreteness: while some single-entry
// local derandomization of the discrete state strictly improves the
// objective, commit the best one. Entry-wise concavity makes the objective
// strictly decrease at every flip, so the walk over the finite discrete
// state space terminates at a flip-local minimum.
template <class Comp, class PState>
void flip_to_local_minimum(const Comp& obj, PState& p, DerandTrace& trace) {
  constexpr double kStrictImprovement = -1e-12;
  const int n = state_size(p);
  const int choices = state_choices(p);
  const long long flip_cap = 16LL * n * choices + 64;

  std::vector<std::pair<int, int>> candidates;
  std::vector<double> deltas;
  long long flips = 0;
  while (true) {
    const double base = obj.eval(p);
    candidates.clear();
    for (int i = 0; i < n; ++i) {
      const int cur = current_value(p, i);
      for (int x = 0; x < choices; ++x) {
        if (x != cur) candidates.emplace_back(i, x);
      }
    }
    scan_candidates(obj, p, candidates, base, deltas);

    Candidate best;
    for (std::size_t f = 0; f < candidates.size(); ++f) {
      const double d = deltas[f];
      if (std::isnan(d)) {
        throw NumericError("NaN encountered in derandomization scan");
      }
      Candidate cand{d, candidates[f].first, candidates[f].second};
      if (cand.better_than(best)) best = cand;
    }
    if (!(best.delta < kStrictImprovement)) break;

    p.set_discrete(best.node, best.value);
    trace.steps.push_back({best.node, best.value, best.delta});
    trace.objective_path.push_back(base + best.delta);
    if (++flips > flip_cap) {
      throw NumericError("local flip phase failed to terminate");
    }
  }
}

template <class Comp, class PState>
DerandTrace greedy_naive(const Comp& obj, PState p) {
  const auto start_time = Clock::now();

  DerandTrace trace;
  trace.initial_objective = obj.eval(p);
  double running = trace.initial_objective;

  const int choices = state_choices(p);
  const bool started_discrete = p.num_fractional() == 0;
  std::vector<std::pair<int, int>> candidates;
  std::vector<double> deltas;
  while (p.num_fractional() > 0) {
    // 2n (or cn) full evaluations per step.
    const double base = obj.eval(p);
    candidates.clear();
    for (int i = 0; i < state_size(p); ++i) {
      if (row_is_discrete(p, i)) continue;
      for (int x = 0; x < choices; ++x) candidates.emplace_back(i, x);
    }
    scan_candidates(obj, p, candidates, base, deltas);

    Candidate best;
    for (std::size_t f = 0; f < candidates.size(); ++f) {
      if (std::isnan(deltas[f])) {
        throw NumericError("NaN encountered in derandomization scan");
      }
      Candidate cand{deltas[f], candidates[f].first, candidates[f].second};
      if (cand.better_than(best)) best = cand;
    }

    p.set_discrete(best.node, best.value);
    running += best.delta;
    trace.steps.push_back({best.node, best.value, best.delta});
    trace.objective_path.push_back(running);
  }
  if (!started_discrete) flip_to_local_minimum(obj, p, trace);

  trace.final = p.to_decision();
  trace.final_objective = obj.eval(p);
  trace.wall_time_s = seconds_since(start_time);
  return trace;
}

template <class Comp, class PState>
DerandTrace iterative_impl(const Comp& obj, PState p, std::span<const int> order) {
  const int n = state_size(p);
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("order must visit every node exactly once");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : order) {
    if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("order must be a permutation of the nodes");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }

  const auto start_time = Clock::now();
  auto state = obj.start(p);

  DerandTrace trace;
  trace.initial_objective = state->value();
  double running = trace.initial_objective;

  const int choices = state_choices(p);
  std::vector<double> row(static_cast<std::size_t>(choices));
  for (int i : order) {
    if (row_is_discrete(p, i)) continue;
    if constexpr (std::is_same_v<PState, ProbMatrix>) {
      state->row_ids(i, row.data());
    } else {
      state->row_ids(i, row[0], row[1]);
    }
    Candidate best;
    for (int x = 0; x < choices; ++x) {
      if (std::isnan(row[static_cast<std::size_t>(x)])) {
        throw NumericError("NaN encountered in incremental differences");
      }
      Candidate cand{row[static_cast<std::size_t>(x)], i, x};
      if (cand.better_than(best)) best = cand;
    }
    commit_step(*state, p, best.node, best.value);
    running += best.delta;
    trace.steps.push_back({best.node, best.value, best.delta});
    trace.objective_path.push_back(running);
  }

  trace.final = p.to_decision();
  trace.final_objective = obj.eval(p);
  trace.wall_time_s = seconds_since(start_time);
  return trace;
}

template <class PState>
DiscreteDecision draw_sample(const PState& p, Rng& rng) {
  DiscreteDecision x;
  x.num_choices = state_choices(p);
  const int n = state_size(p);
  x.values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<PState, ProbMatrix>) {
      const double u = rng.uniform();
      double acc = 0.0;
      int chosen = p.cols() - 1;
      for (int r = 0; r < p.cols(); ++r) {
        acc += p.at(i, r);
        if (u < acc) {
          chosen = r;
          break;
        }
      }
      x.values.push_back(chosen);
    } else {
      x.values.push_back(rng.bernoulli(p[i]) ? 1 : 0);
    }
  }
  return x;
}

template <class Comp, class PState>
double discrete_value(const Comp& obj, const DiscreteDecision& x) {
  // At a point mass the expectation equals the penalized discrete objective.
  if constexpr (std::is_same_v<PState, ProbMatrix>) {
    return obj.eval(ProbMatrix::discrete(x));
  } else {
    return obj.eval(ProbVector::discrete(x));
  }
}

template <class Comp, class PState>
DerandTrace sample_impl(const Comp& obj, const PState& p, int num_samples,
                        std::uint64_t seed) {
  if (num_samples < 1) {
    throw std::invalid_argument("need at least one sample");
  }
  const auto start_time = Clock::now();
  Rng rng(seed);

  DerandTrace trace;
  trace.initial_objective = obj.eval(p);

  double best_value = std::numeric_limits<double>::infinity();
  DiscreteDecision best;
  for (int s = 0; s < num_samples; ++s) {
    DiscreteDecision x = draw_sample(p, rng);
    const double value = discrete_value<Comp, PState>(obj, x);
    if (value < best_value) {
      best_value = value;
      best = std::move(x);
    }
    trace.objective_path.push_back(best_value);
  }

  trace.final = std::move(best);
  trace.final_objective = best_value;
  trace.wall_time_s = seconds_since(start_time);
  return trace;
}

}  // namespace

DerandTrace greedy_derandomize(const PenaltyComposite& obj, const ProbVector& p0) {
  return greedy_incremental(obj, p0);
}

DerandTrace greedy_derandomize(const ColorPenaltyComposite& obj,
                               const ProbMatrix& p0) {
  return greedy_incremental(obj, p0);
}

DerandTrace greedy_derandomize_naive(const PenaltyComposite& obj,
                                     const ProbVector& p0) {
  return greedy_naive(obj, p0);
}

DerandTrace greedy_derandomize_naive(const ColorPenaltyComposite& obj,
                                     const ProbMatrix& p0) {
  return greedy_naive(obj, p0);
}

DerandTrace iterative_rounding(const PenaltyComposite& obj, const ProbVector& p0,
                               std::span<const int> order) {
  return iterative_impl(obj, p0, order);
}

DerandTrace iterative_rounding(const ColorPenaltyComposite& obj,
                               const ProbMatrix& p0, std::span<const int> order) {
  return iterative_impl(obj, p0, order);
}

DerandTrace sample_derandomize(const PenaltyComposite& obj, const ProbVector& p0,
                               int num_samples, std::uint64_t seed) {
  return sample_impl(obj, p0, num_samples, seed);
}

DerandTrace sample_derandomize(const ColorPenaltyComposite& obj,
                               const ProbMatrix& p0, int num_samples,
                               std::uint64_t seed) {
  return sample_impl(obj, p0, num_samples, seed);
}

}  // namespace ucom2
