#include "ucom2/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "ucom2/baselines.hpp"
#include "ucom2/conditions.hpp"
#include "ucom2/derand.hpp"
#include "ucom2/oracle.hpp"
#include "ucom2/poibin.hpp"
#include "ucom2/problems.hpp"
#include "ucom2/rng.hpp"

namespace ucom2 {

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.pass && !c.skipped) return false;
  }
  return true;
}

ProbVector random_prob_vector(int n, std::uint64_t seed, double eps) {
  Rng rng(seed);
  std::vector<double> raw(static_cast<std::size_t>(n));
  for (double& v : raw) v = rng.uniform();
  return ProbVector::clamped(std::move(raw), eps);
}

ProbMatrix random_prob_matrix(int n, int c, std::uint64_t seed, double eps) {
  Rng rng(seed);
  std::vector<double> raw(static_cast<std::size_t>(n) * static_cast<std::size_t>(c));
  for (double& v : raw) v = rng.uniform();
  return ProbMatrix::clamped(n, c, std::move(raw), eps);
}

namespace {

std::vector<double> random_point_distances(int n, Rng& rng,
                                           std::vector<std::array<double, 2>>* out_pts
                                           = nullptr) {
  std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  std::vector<double> dist(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double dx = pts[static_cast<std::size_t>(u)][0] - pts[static_cast<std::size_t>(v)][0];
      const double dy = pts[static_cast<std::size_t>(u)][1] - pts[static_cast<std::size_t>(v)][1];
      dist[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(v)] = dx * dx + dy * dy;
    }
  }
  if (out_pts) *out_pts = std::move(pts);
  return dist;
}

std::shared_ptr<MinDistanceSumCondition> random_ms_term(int n, Rng& rng) {
  const auto dist = random_point_distances(n, rng);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
  std::vector<DistanceProfile> profiles;
  const int num_targets = 1 + static_cast<int>(rng.uniform_int(1, std::min(n, 6)));
  for (int t = 0; t < num_targets; ++t) {
    const int target = static_cast<int>(rng.uniform_int(0, n - 1));
    std::vector<double> row(dist.begin() + static_cast<std::ptrdiff_t>(target) * n,
                            dist.begin() + static_cast<std::ptrdiff_t>(target + 1) * n);
    profiles.push_back(DistanceProfile::build(target, all, row));
  }
  return std::make_shared<MinDistanceSumCondition>(n, std::move(profiles));
}

std::shared_ptr<WeightedCoverCondition> random_cover_term(int n, Rng& rng) {
  const int num_targets = 2 + static_cast<int>(rng.uniform_int(0, 4));
  std::vector<NeighborList> targets;
  std::vector<double> weights;
  for (int t = 0; t < num_targets; ++t) {
    NeighborList nb;
    nb.target = t;
    const int deg = 1 + static_cast<int>(rng.uniform_int(0, std::min(n - 1, 5)));
    std::vector<int> nodes = rng.permutation(n);
    nb.neighbors.assign(nodes.begin(), nodes.begin() + deg);
    targets.push_back(std::move(nb));
    weights.push_back(rng.uniform(0.5, 3.0));
  }
  return std::make_shared<WeightedCoverCondition>(n, std::move(targets),
                                                  std::move(weights));
}

std::shared_ptr<PairProductCondition> random_pair_term(int n, Rng& rng) {
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> weights;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(0.3)) {
        pairs.emplace_back(u, v);
        weights.push_back(rng.uniform(0.1, 2.0));
      }
    }
  }
  if (pairs.empty()) {
    pairs.emplace_back(0, n - 1);
    weights.push_back(1.0);
  }
  return std::make_shared<PairProductCondition>(n, std::move(pairs),
                                                std::move(weights));
}

std::shared_ptr<CardinalityCondition> random_card_term(int n, Rng& rng) {
  const int k = 1 + static_cast<int>(rng.uniform_int(0, n - 1));
  const CardinalitySet set = rng.bernoulli(0.5) ? CardinalitySet::exactly(k, n)
                                                : CardinalitySet::at_most(k, n);
  const PmfMethod method = rng.bernoulli(0.5) ? PmfMethod::kDft : PmfMethod::kDp;
  return std::make_shared<CardinalityCondition>(set, method);
}

std::shared_ptr<LinearCondition> random_linear_term(int n, Rng& rng) {
  std::vector<double> coeffs(static_cast<std::size_t>(n));
  for (double& c : coeffs) c = rng.uniform(-1.0, 1.0);
  return std::make_shared<LinearCondition>(std::move(coeffs), rng.uniform(0.0, 1.0));
}

}  // namespace

PenaltyComposite random_binary_composite(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PenaltyComposite::Term> terms;
  if (rng.bernoulli(0.7)) terms.push_back({random_ms_term(n, rng), rng.uniform(0.2, 1.5)});
  if (rng.bernoulli(0.7)) terms.push_back({random_cover_term(n, rng), rng.uniform(0.2, 1.5)});
  if (rng.bernoulli(0.7)) terms.push_back({random_pair_term(n, rng), rng.uniform(0.2, 1.5)});
  if (rng.bernoulli(0.5)) terms.push_back({random_linear_term(n, rng), rng.uniform(0.2, 1.5)});
  if (rng.bernoulli(0.8) || terms.empty()) {
    terms.push_back({random_card_term(n, rng), rng.uniform(0.2, 2.0)});
  }
  return PenaltyComposite(std::move(terms));
}

ColorPenaltyComposite random_color_composite(int n, int c, std::uint64_t seed,
                                             bool include_layer_terms) {
  Rng rng(seed);
  std::vector<ColorPenaltyComposite::Term> terms;

  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(0.3)) {
        edges.emplace_back(u, v);
        weights.push_back(rng.uniform(0.1, 2.0));
      }
    }
  }
  if (edges.empty()) {
    edges.emplace_back(0, n - 1);
    weights.push_back(1.0);
  }
  terms.push_back({std::make_shared<PairSameColorCondition>(n, c, edges, weights),
                   rng.uniform(0.2, 1.5)});
  if (rng.bernoulli(0.6)) {
    terms.push_back({std::make_shared<ColorUsedCondition>(n, c), rng.uniform(0.2, 1.5)});
  }
  if (include_layer_terms) {
    std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (const auto& [u, v] : edges) {
      neighbors[static_cast<std::size_t>(u)].push_back(v);
      neighbors[static_cast<std::size_t>(v)].push_back(u);
      const double dw = rng.uniform(0.1, 1.0);
      w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = dw;
      w[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = dw;
    }
    std::vector<DistanceProfile> profiles;
    for (int i = 0; i < n; ++i) {
      profiles.push_back(DistanceProfile::build(i, neighbors[static_cast<std::size_t>(i)],
                                                w[static_cast<std::size_t>(i)]));
    }
    terms.push_back({std::make_shared<LayerDistanceCondition>(n, c, std::move(profiles)),
                     rng.uniform(0.2, 1.0)});
    terms.push_back({std::make_shared<LayerCoverCondition>(n, c, std::move(neighbors)),
                     rng.uniform(0.2, 1.0)});
  }
  return ColorPenaltyComposite(std::move(terms));
}

double max_ids_error(const PenaltyComposite& obj, const ProbVector& p) {
  IdTable ids(p.size(), 2);
  obj.ids(p, ids);
  const double base = obj.eval(p);
  ProbVector scratch = p;
  double worst = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p.is_discrete(i)) continue;
    for (int x = 0; x < 2; ++x) {
      scratch.set_discrete(i, x);
      const double direct = obj.eval(scratch) - base;
      worst = std::max(worst, std::abs(ids.at(i, x) - direct));
      scratch.set_raw(i, p[i]);
    }
  }
  return worst;
}

double max_ids_error(const ColorPenaltyComposite& obj, const ProbMatrix& p) {
  IdTable ids(p.rows(), p.cols());
  obj.ids(p, ids);
  const double base = obj.eval(p);
  ProbMatrix scratch = p;
  double worst = 0.0;
  for (int i = 0; i < p.rows(); ++i) {
    if (p.row_discrete(i)) continue;
    for (int x = 0; x < p.cols(); ++x) {
      scratch.set_discrete(i, x);
      const double direct = obj.eval(scratch) - base;
      worst = std::max(worst, std::abs(ids.at(i, x) - direct));
      scratch.set_row_raw(i, p.row(i));
    }
  }
  return worst;
}

double max_multilinearity_error(const PenaltyComposite& obj, const ProbVector& p) {
  const double base = obj.eval(p);
  ProbVector scratch = p;
  double worst = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    scratch.set_discrete(i, 0);
    const double f0 = obj.eval(scratch);
    scratch.set_discrete(i, 1);
    const double f1 = obj.eval(scratch);
    scratch.set_raw(i, p[i]);
    worst = std::max(worst, std::abs(p[i] * f1 + (1.0 - p[i]) * f0 - base));
  }
  return worst;
}

double max_multilinearity_error(const ColorPenaltyComposite& obj,
                                const ProbMatrix& p) {
  const double base = obj.eval(p);
  ProbMatrix scratch = p;
  double worst = 0.0;
  for (int i = 0; i < p.rows(); ++i) {
    double mix = 0.0;
    for (int x = 0; x < p.cols(); ++x) {
      scratch.set_discrete(i, x);
      mix += p.at(i, x) * obj.eval(scratch);
    }
    scratch.set_row_raw(i, p.row(i));
    worst = std::max(worst, std::abs(mix - base));
  }
  return worst;
}

double best_flip_gain(const PenaltyComposite& obj, const DiscreteDecision& final) {
  const ProbVector state = ProbVector::discrete(final);
  const double base = obj.eval(state);
  ProbVector scratch = state;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < state.size(); ++i) {
    for (int x = 0; x < 2; ++x) {
      scratch.set_discrete(i, x);
      best = std::min(best, obj.eval(scratch) - base);
      scratch.set_raw(i, state[i]);
    }
  }
  return best;
}

double best_flip_gain(const ColorPenaltyComposite& obj,
                      const DiscreteDecision& final) {
  const ProbMatrix state = ProbMatrix::discrete(final);
  const double base = obj.eval(state);
  ProbMatrix scratch = state;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < state.rows(); ++i) {
    for (int x = 0; x < state.cols(); ++x) {
      scratch.set_discrete(i, x);
      best = std::min(best, obj.eval(scratch) - base);
      scratch.set_row_raw(i, state.row(i));
    }
  }
  return best;
}

// --------------------------------------------------------------------------
// Suites
// --------------------------------------------------------------------------

namespace {

CheckResult check(const std::string& name, bool ok, double worst, double tol) {
  std::ostringstream detail;
  detail << "max error " << worst << " (tol " << tol << ")";
  return {name, ok, false, detail.str()};
}

CheckResult bounded(const std::string& name, double worst, double tol) {
  return check(name, worst <= tol, worst, tol);
}

// Independent discrete evaluators for the enumeration oracle.

double discrete_card(const DiscreteDecision& x, const std::vector<int>& members) {
  int count = 0;
  for (int v : x.values) count += v;
  double best = std::numeric_limits<double>::infinity();
  for (int k : members) best = std::min(best, std::abs(static_cast<double>(count - k)));
  return best;
}

double discrete_ms(const DiscreteDecision& x, const DistanceProfile& prof) {
  for (std::size_t j = 0; j < prof.order.size(); ++j) {
    if (x.values[static_cast<std::size_t>(prof.order[j])] == 1) return prof.dists[j];
  }
  return 0.0;
}

double discrete_uncovered(const DiscreteDecision& x, const NeighborList& nb) {
  for (int v : nb.neighbors) {
    if (x.values[static_cast<std::size_t>(v)] == 1) return 0.0;
  }
  return 1.0;
}

double discrete_clique_violations(const DiscreteDecision& x, const NonEdgeList& ne) {
  double count = 0.0;
  for (const auto& [u, v] : ne.pairs) {
    if (x.values[static_cast<std::size_t>(u)] == 1 &&
        x.values[static_cast<std::size_t>(v)] == 1) {
      count += 1.0;
    }
  }
  return count;
}

std::pair<double, double> discrete_conflicts(const DiscreteDecision& x,
                                             const UncertainEdgeList& ue) {
  double g1 = 0.0;
  for (const auto& [u, v] : ue.hard()) {
    if (x.values[static_cast<std::size_t>(u)] == x.values[static_cast<std::size_t>(v)]) {
      g1 += 1.0;
    }
  }
  double f2 = 0.0;
  for (std::size_t e = 0; e < ue.soft().size(); ++e) {
    if (x.values[static_cast<std::size_t>(ue.soft()[e].u)] ==
        x.values[static_cast<std::size_t>(ue.soft()[e].v)]) {
      f2 += ue.soft_penalty(e);
    }
  }
  return {g1, f2};
}

CheckResult oracle_conditions_check(const VerifySuiteOptions& opts) {
  double worst = 0.0;
  for (int s = 0; s < opts.seeds; ++s) {
    Rng rng(1000 + static_cast<std::uint64_t>(s));
    const int n = 4 + static_cast<int>(rng.uniform_int(0, 4));
    const ProbVector p = random_prob_vector(n, 2000 + static_cast<std::uint64_t>(s));

    const auto card = random_card_term(n, rng);
    worst = std::max(worst, std::abs(card->eval(p) - oracle_expectation(
        [&](const DiscreteDecision& x) {
          return discrete_card(x, card->feasible().members());
        }, p)));

    const auto ms = random_ms_term(n, rng);
    double ms_direct = 0.0;
    for (const auto& prof : ms->profiles()) {
      ms_direct += oracle_expectation(
          [&](const DiscreteDecision& x) { return discrete_ms(x, prof); }, p);
    }
    worst = std::max(worst, std::abs(ms->eval(p) - ms_direct));

    NeighborList nb;
    nb.target = 0;
    std::vector<int> perm = rng.permutation(n);
    nb.neighbors.assign(perm.begin(),
                        perm.begin() + 1 + rng.uniform_int(0, n - 1));
    worst = std::max(worst, std::abs(cover_eval(nb, p) - oracle_expectation(
        [&](const DiscreteDecision& x) { return discrete_uncovered(x, nb); }, p)));

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(0.5)) edges.emplace_back(u, v);
      }
    }
    const NonEdgeList ne = NonEdgeList::complement(n, edges);
    worst = std::max(worst, std::abs(clique_eval(ne, p) - oracle_expectation(
        [&](const DiscreteDecision& x) { return discrete_clique_violations(x, ne); }, p)));
  }
  return bounded("oracle/binary-conditions", worst, opts.tol);
}

CheckResult oracle_colorwise_check(const VerifySuiteOptions& opts) {
  double worst = 0.0;
  for (int s = 0; s < opts.seeds; ++s) {
    Rng rng(3000 + static_cast<std::uint64_t>(s));
    const int n = 4 + static_cast<int>(rng.uniform_int(0, 1));
    const int c = 3;
    std::vector<UncertainEdge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(0.6)) {
          edges.push_back({u, v, rng.bernoulli(0.4) ? 1.0 : rng.uniform(0.1, 0.95)});
        }
      }
    }
    const UncertainEdgeList ue(n, std::move(edges));
    const ProbMatrix p = random_prob_matrix(n, c, 4000 + static_cast<std::uint64_t>(s));
    const auto [g1, f2] = colorwise_conflict_eval(ue, p);
    const double g1_direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return discrete_conflicts(x, ue).first; }, p);
    const double f2_direct = oracle_expectation(
        [&](const DiscreteDecision& x) { return discrete_conflicts(x, ue).second; }, p);
    worst = std::max(worst, std::abs(g1 - g1_direct));
    worst = std::max(worst, std::abs(f2 - f2_direct));
  }
  return bounded("oracle/colorwise-conflicts", worst, opts.tol);
}

CheckResult poibin_dft_check(const VerifySuiteOptions& opts) {
  double worst = 0.0;
  for (int n : {1, 2, 10, 100, 500}) {
    const ProbVector p = random_prob_vector(n, 5000 + static_cast<std::uint64_t>(n));
    const auto a = pmf_dft(p);
    const auto b = pmf_dp(p);
    for (std::size_t t = 0; t < a.pmf.size(); ++t) {
      worst = std::max(worst, std::abs(a.pmf[t] - b.pmf[t]));
    }
  }
  return bounded("poibin/dft-vs-dp", worst, opts.pmf_tol);
}

CheckResult poibin_reconstruction_check(const VerifySuiteOptions& opts) {
  double worst = 0.0;
  for (int s = 0; s < opts.seeds; ++s) {
    const int n = 12;
    std::vector<double> raw(static_cast<std::size_t>(n));
    Rng rng(6000 + static_cast<std::uint64_t>(s));
    // Half small, half large entries so both recursion branches run.
    for (int i = 0; i < n; ++i) {
      raw[static_cast<std::size_t>(i)] =
          i % 2 == 0 ? rng.uniform(0.01, 0.5) : rng.uniform(0.5, 0.99);
    }
    const ProbVector p = ProbVector::clamped(std::move(raw));
    const auto dist = pmf_dp(p);
    for (int i = 0; i < n; ++i) {
      const auto removed = pmf_remove(dist, i);
      const double pi = p[i];
      for (int t = 0; t <= n; ++t) {
        const double rt = t < n ? removed[static_cast<std::size_t>(t)] : 0.0;
        const double rt1 = t > 0 ? removed[static_cast<std::size_t>(t) - 1] : 0.0;
        worst = std::max(worst, std::abs(rt * (1.0 - pi) + rt1 * pi -
                                         dist.pmf[static_cast<std::size_t>(t)]));
      }
    }
  }
  return bounded("poibin/reconstruction-identity", worst, opts.tol);
}

CheckResult ids_exactness_check(const VerifySuiteOptions& opts) {
  double worst = 0.0;
  for (int s = 0; s < opts.seeds; ++s) {
    const int n = 30;
    const auto comp = random_binary_composite(n, 7000 + static_cast<std::uint64_t>(s));
    const ProbVector p = random_prob_vector(n, 7500 + static_cast<std::uint64_t>(s));
    worst = std::max(worst, max_ids_error(comp, p));

    const auto color = random_color_composite(12, 3, 7700 + static_cast<std::uint64_t>(s),
                                              s == 0);
    const ProbMatrix pm = random_prob_matrix(12, 3, 7900 + static_cast<std::uint64_t>(s));
    worst = std::max(worst, max_ids_error(color, pm));
  }
  return bounded("ids/der-and-recompute", worst, opts.tol);
}

CheckResult multilinearity_check(const VerifySuiteOptions& opts) {
  double worst = 0.0;
  for (int s = 0; s < opts.seeds; ++s) {
    const int n = 20;
    const auto comp = random_binary_composite(n, 8000 + static_cast<std::uint64_t>(s));
    worst = std::max(worst, max_multilinearity_error(
        comp, random_prob_vector(n, 8100 + static_cast<std::uint64_t>(s))));
    const auto color = random_color_composite(10, 3, 8200 + static_cast<std::uint64_t>(s));
    worst = std::max(worst, max_multilinearity_error(
        color, random_prob_matrix(10, 3, 8300 + static_cast<std::uint64_t>(s))));
  }
  return bounded("multilinearity", worst, opts.tol);
}

CheckResult guarantees_check(const VerifySuiteOptions& opts) {
  double worst_regression = 0.0;
  double worst_flip = 0.0;
  bool discrete = true;
  for (int s = 0; s < opts.seeds; ++s) {
    const int n = 16;
    const auto comp = random_binary_composite(n, 9000 + static_cast<std::uint64_t>(s));
    const ProbVector p0 = random_prob_vector(n, 9100 + static_cast<std::uint64_t>(s));
    const DerandTrace trace = greedy_derandomize(comp, p0);
    discrete = discrete && static_cast<int>(trace.final.values.size()) == n;
    worst_regression =
        std::max(worst_regression, trace.final_objective - trace.initial_objective);
    worst_flip = std::max(worst_flip, -best_flip_gain(comp, trace.final));

    const auto color = random_color_composite(10, 3, 9200 + static_cast<std::uint64_t>(s));
    const ProbMatrix pm0 = random_prob_matrix(10, 3, 9300 + static_cast<std::uint64_t>(s));
    const DerandTrace ct = greedy_derandomize(color, pm0);
    worst_regression =
        std::max(worst_regression, ct.final_objective - ct.initial_objective);
    worst_flip = std::max(worst_flip, -best_flip_gain(color, ct.final));
  }
  std::ostringstream detail;
  detail << "regression " << worst_regression << ", flip slack " << worst_flip
         << " (tol " << opts.tol << ")";
  return {"derand/greedy-guarantees",
          discrete && worst_regression <= opts.tol && worst_flip <= opts.tol, false,
          detail.str()};
}

CheckResult naive_equivalence_check(const VerifySuiteOptions& opts) {
  for (int s = 0; s < opts.seeds; ++s) {
    const int n = 12;
    const auto comp = random_binary_composite(n, 9500 + static_cast<std::uint64_t>(s));
    const ProbVector p0 = random_prob_vector(n, 9600 + static_cast<std::uint64_t>(s));
    const DerandTrace fast = greedy_derandomize(comp, p0);
    const DerandTrace slow = greedy_derandomize_naive(comp, p0);
    if (fast.steps.size() != slow.steps.size()) {
      return {"derand/naive-equivalence", false, false, "step counts differ"};
    }
    for (std::size_t t = 0; t < fast.steps.size(); ++t) {
      if (fast.steps[t].node != slow.steps[t].node ||
          fast.steps[t].value != slow.steps[t].value) {
        return {"derand/naive-equivalence", false, false,
                "step sequences diverge at step " + std::to_string(t)};
      }
    }
  }
  return {"derand/naive-equivalence", true, false, "identical step sequences"};
}

template <class Comp, class PState>
std::vector<CheckResult> instance_battery(const std::string& tag, const Comp& comp,
                                          int n, int c,
                                          const VerifySuiteOptions& opts) {
  std::vector<CheckResult> checks;
  double worst_ids = 0.0;
  double worst_multi = 0.0;
  for (int s = 0; s < opts.seeds; ++s) {
    PState p = [&] {
      if constexpr (std::is_same_v<PState, ProbMatrix>) {
        return random_prob_matrix(n, c, 11000 + static_cast<std::uint64_t>(s));
      } else {
        (void)c;
        return random_prob_vector(n, 11000 + static_cast<std::uint64_t>(s));
      }
    }();
    worst_ids = std::max(worst_ids, max_ids_error(comp, p));
    worst_multi = std::max(worst_multi, max_multilinearity_error(comp, p));
  }
  checks.push_back(bounded(tag + "/ids", worst_ids, opts.tol));
  checks.push_back(bounded(tag + "/multilinearity", worst_multi, opts.tol));

  PState p0 = [&] {
    if constexpr (std::is_same_v<PState, ProbMatrix>) {
      return random_prob_matrix(n, c, 12000);
    } else {
      return random_prob_vector(n, 12000);
    }
  }();
  const DerandTrace trace = greedy_derandomize(comp, p0);
  const double regression = trace.final_objective - trace.initial_objective;
  const double flip = -best_flip_gain(comp, trace.final);
  std::ostringstream detail;
  detail << "regression " << regression << ", flip slack " << flip;
  checks.push_back({tag + "/greedy-guarantees",
                    regression <= opts.tol && flip <= opts.tol, false, detail.str()});
  return checks;
}

}  // namespace

std::vector<CheckResult> verify_bundled(const VerifySuiteOptions& opts) {
  std::vector<CheckResult> checks;
  checks.push_back(poibin_dft_check(opts));
  checks.push_back(poibin_reconstruction_check(opts));
  checks.push_back(oracle_conditions_check(opts));
  checks.push_back(oracle_colorwise_check(opts));
  checks.push_back(ids_exactness_check(opts));
  checks.push_back(multilinearity_check(opts));
  checks.push_back(guarantees_check(opts));
  checks.push_back(naive_equivalence_check(opts));
  return checks;
}

std::vector<CheckResult> verify_instance(const Instance& inst,
                                         const VerifySuiteOptions& opts) {
  std::vector<CheckResult> checks;
  if (const auto* fl = std::get_if<FacilityInstance>(&inst)) {
    const PenaltyComposite comp = build_fl(*fl);
    auto battery = instance_battery<PenaltyComposite, ProbVector>(
        "fl", comp, fl->n, 2, opts);
    checks.insert(checks.end(), battery.begin(), battery.end());
    if (fl->n <= 10) {
      double worst = 0.0;
      for (int s = 0; s < opts.seeds; ++s) {
        const ProbVector p = random_prob_vector(fl->n, 13000 + static_cast<std::uint64_t>(s));
        const double direct = oracle_expectation(
            [&](const DiscreteDecision& x) {
              return comp.eval(ProbVector::discrete(x));
            },
            p);
        worst = std::max(worst, std::abs(comp.eval(p) - direct));
      }
      checks.push_back(bounded("fl/oracle", worst, opts.tol));
    } else {
      checks.push_back({"fl/oracle", false, true, "enumeration too large, skipped"});
    }
  } else if (const auto* mc = std::get_if<CoverageInstance>(&inst)) {
    const PenaltyComposite comp = build_mc(*mc);
    auto battery = instance_battery<PenaltyComposite, ProbVector>(
        "mc", comp, mc->num_sets, 2, opts);
    checks.insert(checks.end(), battery.begin(), battery.end());
    if (mc->num_sets <= 10) {
      double worst = 0.0;
      for (int s = 0; s < opts.seeds; ++s) {
        const ProbVector p =
            random_prob_vector(mc->num_sets, 13000 + static_cast<std::uint64_t>(s));
        const double direct = oracle_expectation(
            [&](const DiscreteDecision& x) {
              return comp.eval(ProbVector::discrete(x));
            },
            p);
        worst = std::max(worst, std::abs(comp.eval(p) - direct));
      }
      checks.push_back(bounded("mc/oracle", worst, opts.tol));
    } else {
      checks.push_back({"mc/oracle", false, true, "enumeration too large, skipped"});
    }
  } else if (const auto* rc = std::get_if<RobustColoringInstance>(&inst)) {
    const ColorPenaltyComposite comp = build_rc(*rc);
    auto battery = instance_battery<ColorPenaltyComposite, ProbMatrix>(
        "rc", comp, rc->n, rc->c, opts);
    checks.insert(checks.end(), battery.begin(), battery.end());
    double outcomes = 1.0;
    for (int i = 0; i < rc->n && outcomes <= 1 << 20; ++i) {
      outcomes *= rc->c;
    }
    if (outcomes <= 1 << 20) {
      double worst = 0.0;
      for (int s = 0; s < opts.seeds; ++s) {
        const ProbMatrix p =
            random_prob_matrix(rc->n, rc->c, 13000 + static_cast<std::uint64_t>(s));
        const double direct = oracle_expectation(
            [&](const DiscreteDecision& x) {
              return comp.eval(ProbMatrix::discrete(x));
            },
            p);
        worst = std::max(worst, std::abs(comp.eval(p) - direct));
      }
      checks.push_back(bounded("rc/oracle", worst, opts.tol));
    } else {
      checks.push_back({"rc/oracle", false, true, "enumeration too large, skipped"});
    }
  }
  return checks;
}

}  // namespace ucom2
