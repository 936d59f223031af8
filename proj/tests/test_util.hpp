// Shared helpers for the unit and acceptance suites: independent discrete
// evaluators of the penalized problem objectives (the enumeration oracles),
// finite-difference gradients, and small instance factories. Everything here
// deliberately avoids the closed-form code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "ucom2/problems.hpp"

namespace testutil {

// Penalized discrete facility-location objective computed from the raw
// instance: total min distance to the chosen set plus beta times the
// cardinality violation distance. An empty chosen set contributes zero
// distance, matching the expectation's empty-set convention.
inline double fl_discrete(const ucom2::FacilityInstance& inst, double beta,
                          const ucom2::DiscreteDecision& x) {
  std::vector<int> chosen;
  for (int i = 0; i < inst.n; ++i) {
    if (x.values[static_cast<std::size_t>(i)] == 1) chosen.push_back(i);
  }
  double total = 0.0;
  for (int v = 0; v < inst.n; ++v) {
    double best = std::numeric_limits<double>::infinity();
    for (int u : chosen) best = std::min(best, inst.d(v, u));
    if (!chosen.empty()) total += best;
  }
  const double violation =
      std::abs(static_cast<double>(chosen.size()) - static_cast<double>(inst.k));
  return total + beta * violation;
}

inline double mc_discrete(const ucom2::CoverageInstance& inst, double beta,
                          const ucom2::DiscreteDecision& x) {
  std::vector<bool> covered(static_cast<std::size_t>(inst.num_items), false);
  int chosen = 0;
  for (int s = 0; s < inst.num_sets; ++s) {
    if (x.values[static_cast<std::size_t>(s)] != 1) continue;
    ++chosen;
    for (int j : inst.sets[static_cast<std::size_t>(s)]) {
      covered[static_cast<std::size_t>(j)] = true;
    }
  }
  double uncovered = 0.0;
  for (int j = 0; j < inst.num_items; ++j) {
    if (!covered[static_cast<std::size_t>(j)]) {
      uncovered += inst.weights[static_cast<std::size_t>(j)];
    }
  }
  return uncovered + beta * std::abs(static_cast<double>(chosen - inst.k));
}

inline double rc_discrete(const ucom2::RobustColoringInstance& inst, double beta,
                          const ucom2::DiscreteDecision& x) {
  double hard = 0.0;
  double soft = 0.0;
  for (const auto& e : inst.edges) {
    if (x.values[static_cast<std::size_t>(e.u)] != x.values[static_cast<std::size_t>(e.v)]) {
      continue;
    }
    if (e.prob >= 1.0) {
      hard += 1.0;
    } else if (e.prob > 0.0) {
      soft += -std::log1p(-std::min(e.prob, 1.0 - 1e-12));
    }
  }
  return soft + beta * hard;
}

inline double rkc_discrete(const ucom2::RobustCliqueInstance& inst,
                           double beta_clique, double beta_card,
                           const ucom2::DiscreteDecision& x) {
  std::vector<int> chosen;
  for (int i = 0; i < inst.n; ++i) {
    if (x.values[static_cast<std::size_t>(i)] == 1) chosen.push_back(i);
  }
  std::set<std::pair<int, int>> edges;
  std::vector<std::vector<double>> prob(
      static_cast<std::size_t>(inst.n),
      std::vector<double>(static_cast<std::size_t>(inst.n), 0.0));
  for (const auto& e : inst.edges) {
    edges.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    prob[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = e.prob;
    prob[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = e.prob;
  }
  double neg_log = 0.0;
  double missing = 0.0;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      const int u = std::min(chosen[a], chosen[b]);
      const int v = std::max(chosen[a], chosen[b]);
      if (edges.count({u, v})) {
        neg_log -= std::log(prob[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
      } else {
        missing += 1.0;
      }
    }
  }
  const double violation =
      std::abs(static_cast<double>(chosen.size()) - static_cast<double>(inst.k));
  return neg_log + beta_clique * missing + beta_card * violation;
}

inline double rds_discrete(const ucom2::RobustDominatingSetInstance& inst,
                           double beta, const ucom2::DiscreteDecision& x) {
  std::vector<double> uncoverable(static_cast<std::size_t>(inst.n), 1.0);
  for (const auto& e : inst.edges) {
    uncoverable[static_cast<std::size_t>(e.u)] *= 1.0 - e.prob;
    uncoverable[static_cast<std::size_t>(e.v)] *= 1.0 - e.prob;
  }
  double value = 0.0;
  int chosen = 0;
  for (int i = 0; i < inst.n; ++i) {
    if (x.values[static_cast<std::size_t>(i)] == 1) {
      ++chosen;
    } else {
      value += uncoverable[static_cast<std::size_t>(i)];
    }
  }
  return value + beta * std::abs(static_cast<double>(chosen - inst.k));
}

inline double cc_discrete(const ucom2::CliqueCoverInstance& inst, double beta,
                          const ucom2::DiscreteDecision& x) {
  std::set<std::pair<int, int>> edges;
  for (const auto& [u, v] : inst.edges) {
    edges.insert({std::min(u, v), std::max(u, v)});
  }
  std::vector<bool> used(static_cast<std::size_t>(inst.c), false);
  for (int v : x.values) used[static_cast<std::size_t>(v)] = true;
  double groups = 0.0;
  for (bool u : used) groups += u ? 1.0 : 0.0;
  double violations = 0.0;
  for (int u = 0; u < inst.n; ++u) {
    for (int v = u + 1; v < inst.n; ++v) {
      if (x.values[static_cast<std::size_t>(u)] == x.values[static_cast<std::size_t>(v)] &&
          edges.count({u, v}) == 0) {
        violations += 1.0;
      }
    }
  }
  return groups + beta * violations;
}

inline double mst_discrete(const ucom2::LayeredMstInstance& inst, double beta,
                           const ucom2::DiscreteDecision& x) {
  const int c = inst.c > 0 ? inst.c : inst.n;
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(inst.n));
  for (const auto& e : inst.edges) {
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
  }
  double weight = 0.0;
  double orphans = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    const int layer = x.values[static_cast<std::size_t>(i)];
    if (layer == 0 || layer >= c) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [v, w] : adj[static_cast<std::size_t>(i)]) {
      if (x.values[static_cast<std::size_t>(v)] == layer - 1) best = std::min(best, w);
    }
    if (std::isinf(best)) {
      orphans += 1.0;
    } else {
      weight += best;
    }
  }
  return weight + beta * orphans;
}

// Central finite differences of a binary composite at p, treating entries
// as free coordinates. Multilinearity makes the truncation error vanish.
inline std::vector<double> fd_gradient(const ucom2::PenaltyComposite& obj,
                                       const ucom2::ProbVector& p, double h) {
  std::vector<double> grad(static_cast<std::size_t>(p.size()));
  ucom2::ProbVector scratch = p;
  for (int i = 0; i < p.size(); ++i) {
    scratch.set_raw(i, p[i] + h);
    const double up = obj.eval(scratch);
    scratch.set_raw(i, p[i] - h);
    const double down = obj.eval(scratch);
    scratch.set_raw(i, p[i]);
    grad[static_cast<std::size_t>(i)] = (up - down) / (2.0 * h);
  }
  return grad;
}

inline std::vector<double> fd_gradient(const ucom2::ColorPenaltyComposite& obj,
                                       const ucom2::ProbMatrix& p, double h) {
  std::vector<double> grad(static_cast<std::size_t>(p.rows()) *
                           static_cast<std::size_t>(p.cols()));
  ucom2::ProbMatrix scratch = p;
  for (int i = 0; i < p.rows(); ++i) {
    for (int r = 0; r < p.cols(); ++r) {
      const double v = p.at(i, r);
      scratch.set_raw(i, r, v + h);
      const double up = obj.eval(scratch);
      scratch.set_raw(i, r, v - h);
      const double down = obj.eval(scratch);
      scratch.set_raw(i, r, v);
      grad[static_cast<std::size_t>(i) * static_cast<std::size_t>(p.cols()) +
           static_cast<std::size_t>(r)] = (up - down) / (2.0 * h);
    }
  }
  return grad;
}

// Largest relative gradient error with an absolute floor.
inline double gradient_error(const std::vector<double>& got,
                             const std::vector<double>& want,
                             double abs_floor = 1e-8) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double scale = std::max(std::abs(want[i]), abs_floor);
    worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
  }
  return worst;
}

}  // namespace testutil
