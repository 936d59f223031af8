#include "ucom2/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ucom2/rng.hpp"

namespace ucom2 {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

bool budget_exhausted(const Budget& budget, int rounds_done,
                      Clock::time_point start) {
  if (budget.rounds > 0) return rounds_done >= budget.rounds;
  if (rounds_done == 0) return false;
  return seconds_since(start) >= budget.seconds;
}

DiscreteDecision subset_decision(int n, const std::vector<int>& chosen) {
  DiscreteDecision x;
  x.num_choices = 2;
  x.values.assign(static_cast<std::size_t>(n), 0);
  for (int v : chosen) x.values[static_cast<std::size_t>(v)] = 1;
  return x;
}

}  // namespace

BaselineResult greedy_fl(const FacilityInstance& inst) {
  const auto start = Clock::now();
  const int n = inst.n;
  std::vector<double> cur_min(static_cast<std::size_t>(n), kInf);
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::vector<int> picks;

  for (int round = 0; round < inst.k; ++round) {
    int best_cand = -1;
    double best_total = kInf;
    for (int cand = 0; cand < n; ++cand) {
      if (chosen[static_cast<std::size_t>(cand)]) continue;
      double total = 0.0;
      for (int v = 0; v < n; ++v) {
        total += std::min(cur_min[static_cast<std::size_t>(v)], inst.d(v, cand));
      }
      if (total < best_total) {
        best_total = total;
        best_cand = cand;
      }
    }
    chosen[static_cast<std::size_t>(best_cand)] = true;
    picks.push_back(best_cand);
    for (int v = 0; v < n; ++v) {
      cur_min[static_cast<std::size_t>(v)] =
          std::min(cur_min[static_cast<std::size_t>(v)], inst.d(v, best_cand));
    }
  }

  BaselineResult result;
  result.decision = subset_decision(n, picks);
  const DiscreteReport report = evaluate_discrete(inst, result.decision);
  result.objective = report.objective;
  result.feasible = report.feasible;
  result.rounds_run = 1;
  result.wall_time_s = seconds_since(start);
  return result;
}

BaselineResult greedy_mc(const CoverageInstance& inst) {
  inst.validate();
  const auto start = Clock::now();
  std::vector<bool> covered(static_cast<std::size_t>(inst.num_items), false);
  std::vector<bool> chosen(static_cast<std::size_t>(inst.num_sets), false);
  std::vector<int> picks;

  for (int round = 0; round < inst.k; ++round) {
    int best_set = -1;
    double best_gain = -1.0;
    for (int s = 0; s < inst.num_sets; ++s) {
      if (chosen[static_cast<std::size_t>(s)]) continue;
      double gain = 0.0;
      for (int j : inst.sets[static_cast<std::size_t>(s)]) {
        if (!covered[static_cast<std::size_t>(j)]) {
          gain += inst.weights[static_cast<std::size_t>(j)];
        }
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_set = s;
      }
    }
    chosen[static_cast<std::size_t>(best_set)] = true;
    picks.push_back(best_set);
    for (int j : inst.sets[static_cast<std::size_t>(best_set)]) {
      covered[static_cast<std::size_t>(j)] = true;
    }
  }

  BaselineResult result;
  result.decision = subset_decision(inst.num_sets, picks);
  const DiscreteReport report = evaluate_discrete(inst, result.decision);
  result.objective = report.objective;
  result.feasible = report.feasible;
  result.rounds_run = 1;
  result.wall_time_s = seconds_since(start);
  return result;
}

BaselineResult greedy_rd_coloring(const RobustColoringInstance& inst, Budget budget,
                                  std::uint64_t seed) {
  inst.validate();
  const auto start = Clock::now();
  const UncertainEdgeList ue = inst.edge_list();

  // Adjacency with hard/soft annotation: (neighbor, penalty, is_hard).
  struct Arc {
    int to;
    double penalty;
    bool hard;
  };
  std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(inst.n));
  for (const auto& [u, v] : ue.hard()) {
    adj[static_cast<std::size_t>(u)].push_back({v, 0.0, true});
    adj[static_cast<std::size_t>(v)].push_back({u, 0.0, true});
  }
  for (std::size_t e = 0; e < ue.soft().size(); ++e) {
    const auto& edge = ue.soft()[e];
    const double w = ue.soft_penalty(e);
    adj[static_cast<std::size_t>(edge.u)].push_back({edge.v, w, false});
    adj[static_cast<std::size_t>(edge.v)].push_back({edge.u, w, false});
  }

  Rng rng(seed);
  BaselineResult result;
  result.seed = seed;
  int best_hard = std::numeric_limits<int>::max();
  double best_soft = kInf;

  std::vector<int> color(static_cast<std::size_t>(inst.n));
  std::vector<int> hard_count(static_cast<std::size_t>(inst.c));
  std::vector<double> soft_cost(static_cast<std::size_t>(inst.c));
  int rounds = 0;
  while (!budget_exhausted(budget, rounds, start)) {
    const std::vector<int> order = rng.permutation(inst.n);
    std::fill(color.begin(), color.end(), -1);
    int total_hard = 0;
    double total_soft = 0.0;
    for (int v : order) {
      std::fill(hard_count.begin(), hard_count.end(), 0);
      std::fill(soft_cost.begin(), soft_cost.end(), 0.0);
      for (const Arc& arc : adj[static_cast<std::size_t>(v)]) {
        const int cu = color[static_cast<std::size_t>(arc.to)];
        if (cu < 0) continue;
        if (arc.hard) {
          ++hard_count[static_cast<std::size_t>(cu)];
        } else {
          soft_cost[static_cast<std::size_t>(cu)] += arc.penalty;
        }
      }
      int best_color = 0;
      for (int r = 1; r < inst.c; ++r) {
        const bool fewer_hard =
            hard_count[static_cast<std::size_t>(r)] < hard_count[static_cast<std::size_t>(best_color)];
        const bool tie_hard =
            hard_count[static_cast<std::size_t>(r)] == hard_count[static_cast<std::size_t>(best_color)];
        if (fewer_hard ||
            (tie_hard && soft_cost[static_cast<std::size_t>(r)] <
                             soft_cost[static_cast<std::size_t>(best_color)])) {
          best_color = r;
        }
      }
      color[static_cast<std::size_t>(v)] = best_color;
      total_hard += hard_count[static_cast<std::size_t>(best_color)];
      total_soft += soft_cost[static_cast<std::size_t>(best_color)];
    }
    if (total_hard < best_hard ||
        (total_hard == best_hard && total_soft < best_soft)) {
      best_hard = total_hard;
      best_soft = total_soft;
      result.decision.values = color;
      result.decision.num_choices = inst.c;
    }
    ++rounds;
  }

  result.rounds_run = rounds;
  const DiscreteReport report = evaluate_discrete(inst, result.decision);
  result.objective = report.objective;
  result.feasible = report.feasible;
  result.wall_time_s = seconds_since(start);
  return result;
}

namespace {

template <class Inst>
BaselineResult random_subsets(const Inst& inst, int n, int k, Budget budget,
                              std::uint64_t seed) {
  const auto start = Clock::now();
  Rng rng(seed);
  BaselineResult result;
  result.seed = seed;

  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;

  double best = kInf;
  int rounds = 0;
  while (!budget_exhausted(budget, rounds, start)) {
    rng.shuffle(ids);
    const DiscreteDecision x =
        subset_decision(n, std::vector<int>(ids.begin(), ids.begin() + k));
    const DiscreteReport report = evaluate_discrete(inst, x);
    // Uniform draws are always cardinality-feasible; orient the comparison
    // so that both minimized and maximized objectives work.
    const double score = report.problem == "mc" ? -report.objective : report.objective;
    if (score < best) {
      best = score;
      result.decision = x;
      result.objective = report.objective;
      result.feasible = report.feasible;
    }
    ++rounds;
  }
  result.rounds_run = rounds;
  result.wall_time_s = seconds_since(start);
  return result;
}

}  // namespace

BaselineResult random_select(const FacilityInstance& inst, Budget budget,
                             std::uint64_t seed) {
  return random_subsets(inst, inst.n, inst.k, budget, seed);
}

BaselineResult random_select(const CoverageInstance& inst, Budget budget,
                             std::uint64_t seed) {
  inst.validate();
  return random_subsets(inst, inst.num_sets, inst.k, budget, seed);
}

}  // namespace ucom2
