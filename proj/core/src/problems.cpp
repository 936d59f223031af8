#include "ucom2/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

namespace ucom2 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSoftProbCap = 1.0 - 1e-12;

int chosen_count(const DiscreteDecision& x) {
  int count = 0;
  for (int v : x.values) count += v == 1 ? 1 : 0;
  return count;
}

std::vector<int> chosen_nodes(const DiscreteDecision& x) {
  std::vector<int> nodes;
  for (int i = 0; i < x.size(); ++i) {
    if (x.values[static_cast<std::size_t>(i)] == 1) nodes.push_back(i);
  }
  return nodes;
}

}  // namespace

FacilityInstance FacilityInstance::from_points(
    std::vector<std::array<double, 2>> points, int k) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw std::invalid_argument("need at least one location");
  if (k < 1 || k > n) throw std::invalid_argument("k outside 1..n");
  FacilityInstance inst;
  inst.n = n;
  inst.k = k;
  inst.dist.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double dx = points[static_cast<std::size_t>(u)][0] -
                        points[static_cast<std::size_t>(v)][0];
      const double dy = points[static_cast<std::size_t>(u)][1] -
                        points[static_cast<std::size_t>(v)][1];
      inst.dist[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(v)] = dx * dx + dy * dy;
    }
  }
  inst.points = std::move(points);
  return inst;
}

FacilityInstance FacilityInstance::from_matrix(int n, std::vector<double> dist,
                                               int k) {
  if (n < 1) throw std::invalid_argument("need at least one location");
  if (k < 1 || k > n) throw std::invalid_argument("k outside 1..n");
  if (dist.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("distance matrix size mismatch");
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double duv = dist[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                              static_cast<std::size_t>(v)];
      const double dvu = dist[static_cast<std::size_t>(v) * static_cast<std::size_t>(n) +
                              static_cast<std::size_t>(u)];
      if (!(duv >= 0.0) || duv != dvu) {
        throw std::invalid_argument("distance matrix must be symmetric non-negative");
      }
    }
    if (dist[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(u)] != 0.0) {
      throw std::invalid_argument("distance matrix diagonal must be zero");
    }
  }
  FacilityInstance inst;
  inst.n = n;
  inst.k = k;
  inst.dist = std::move(dist);
  return inst;
}

std::vector<std::vector<int>> CoverageInstance::item_sets() const {
  std::vector<std::vector<int>> covering(static_cast<std::size_t>(num_items));
  for (int s = 0; s < num_sets; ++s) {
    for (int j : sets[static_cast<std::size_t>(s)]) {
      covering[static_cast<std::size_t>(j)].push_back(s);
    }
  }
  return covering;
}

double CoverageInstance::total_weight() const {
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

void CoverageInstance::validate() const {
  if (num_sets < 1 || num_items < 1) {
    throw std::invalid_argument("coverage instance needs sets and items");
  }
  if (k < 1 || k > num_sets) throw std::invalid_argument("k outside 1..n");
  if (static_cast<int>(weights.size()) != num_items ||
      static_cast<int>(sets.size()) != num_sets) {
    throw std::invalid_argument("coverage instance size mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("item weights must be positive");
  }
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("empty set encountered");
    for (int j : s) {
      if (j < 0 || j >= num_items) throw std::out_of_range("item index out of range");
    }
  }
}

void RobustColoringInstance::validate() const {
  if (n < 1) throw std::invalid_argument("empty conflict graph");
  if (c < 2) throw std::invalid_argument("need at least two colors");
  UncertainEdgeList check(n, edges);  // endpoint/probability validation
}

void RobustCliqueInstance::validate() const {
  if (n < 1) throw std::invalid_argument("empty graph");
  if (k < 1 || k > n) throw std::invalid_argument("k outside 1..n");
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw std::invalid_argument("edge endpoints out of range");
    }
    if (!(e.prob > 0.0 && e.prob <= 1.0)) {
      throw std::invalid_argument("edge existence probability outside (0, 1]");
    }
  }
}

void RobustDominatingSetInstance::validate() const {
  if (n < 1) throw std::invalid_argument("empty graph");
  if (k < 1 || k > n) throw std::invalid_argument("k outside 1..n");
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw std::invalid_argument("edge endpoints out of range");
    }
    if (!(e.prob > 0.0 && e.prob <= 1.0)) {
      throw std::invalid_argument("edge existence probability outside (0, 1]");
    }
  }
}

void CliqueCoverInstance::validate() const {
  if (n < 1) throw std::invalid_argument("empty graph");
  if (c < 2) throw std::invalid_argument("need at least two groups");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) {
      throw std::invalid_argument("edge endpoints out of range");
    }
  }
}

void LayeredMstInstance::validate() const {
  if (n < 1) throw std::invalid_argument("empty graph");
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw std::invalid_argument("edge endpoints out of range");
    }
    if (!(e.w >= 0.0)) throw std::invalid_argument("edge weights must be >= 0");
  }
}

// --------------------------------------------------------------------------
// Builders
// --------------------------------------------------------------------------

double default_beta_fl(const FacilityInstance& inst) {
  // One tenth of the scale of the min-distance sum at the k/n starting point.
  const ProbVector p0 = ProbVector::constant(
      inst.n, static_cast<double>(inst.k) / static_cast<double>(inst.n));
  std::vector<int> all(static_cast<std::size_t>(inst.n));
  for (int v = 0; v < inst.n; ++v) all[static_cast<std::size_t>(v)] = v;
  double scale = 0.0;
  for (int v = 0; v < inst.n; ++v) {
    std::vector<double> row(
        inst.dist.begin() + static_cast<std::ptrdiff_t>(v) * inst.n,
        inst.dist.begin() + static_cast<std::ptrdiff_t>(v + 1) * inst.n);
    scale += ms_eval(DistanceProfile::build(v, all, row), p0);
  }
  return 0.1 * std::max(scale, 1e-9);
}

double default_beta_rc(const RobustColoringInstance& inst) {
  const double top = inst.edge_list().max_soft_penalty();
  return top > 0.0 ? top : 1.0;
}

PenaltyComposite build_fl(const FacilityInstance& inst, double beta) {
  if (inst.k < 1 || inst.k > inst.n) throw std::invalid_argument("k outside 1..n");
  if (beta < 0.0) beta = default_beta_fl(inst);

  std::vector<int> all(static_cast<std::size_t>(inst.n));
  for (int v = 0; v < inst.n; ++v) all[static_cast<std::size_t>(v)] = v;
  std::vector<DistanceProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(inst.n));
  for (int v = 0; v < inst.n; ++v) {
    std::vector<double> row(
        inst.dist.begin() + static_cast<std::ptrdiff_t>(v) * inst.n,
        inst.dist.begin() + static_cast<std::ptrdiff_t>(v + 1) * inst.n);
    profiles.push_back(DistanceProfile::build(v, all, row));
  }

  std::vector<PenaltyComposite::Term> terms;
  terms.push_back({std::make_shared<MinDistanceSumCondition>(inst.n, std::move(profiles)),
                   1.0});
  terms.push_back({std::make_shared<CardinalityCondition>(
                       CardinalitySet::exactly(inst.k, inst.n)),
                   beta});
  return PenaltyComposite(std::move(terms));
}

PenaltyComposite build_mc(const CoverageInstance& inst, double beta) {
  inst.validate();
  if (beta < 0.0) beta = kDefaultBetaMc;

  // Bipartite covering structure: each item is a target coverable by the
  // sets that contain it; the minimized objective is the uncovered weight.
  std::vector<NeighborList> targets;
  targets.reserve(static_cast<std::size_t>(inst.num_items));
  const auto covering = inst.item_sets();
  for (int j = 0; j < inst.num_items; ++j) {
    targets.push_back({j, covering[static_cast<std::size_t>(j)]});
  }

  std::vector<PenaltyComposite::Term> terms;
  terms.push_back({std::make_shared<WeightedCoverCondition>(
                       inst.num_sets, std::move(targets), inst.weights),
                   1.0});
  terms.push_back({std::make_shared<CardinalityCondition>(
                       CardinalitySet::exactly(inst.k, inst.num_sets)),
                   beta});
  return PenaltyComposite(std::move(terms));
}

ColorPenaltyComposite build_rc(const RobustColoringInstance& inst, double beta) {
  inst.validate();
  if (beta < 0.0) beta = default_beta_rc(inst);
  const UncertainEdgeList ue = inst.edge_list();

  std::vector<ColorPenaltyComposite::Term> terms;
  terms.push_back({std::make_shared<PairSameColorCondition>(
                       PairSameColorCondition::soft_conflicts(ue, inst.c)),
                   1.0});
  terms.push_back({std::make_shared<PairSameColorCondition>(
                       PairSameColorCondition::hard_conflicts(ue, inst.c)),
                   beta});
  return ColorPenaltyComposite(std::move(terms));
}

PenaltyComposite build_rkc(const RobustCliqueInstance& inst, double beta_clique,
                           double beta_card) {
  inst.validate();
  if (beta_clique < 0.0) beta_clique = 1.0;
  if (beta_card < 0.0) beta_card = 1.0;

  // Uncertainty term: -sum_{(u,v) in E} p_u p_v log P_uv.
  std::vector<std::pair<int, int>> edge_pairs;
  std::vector<double> edge_weights;
  std::vector<std::pair<int, int>> known_edges;
  for (const auto& e : inst.edges) {
    const int u = std::min(e.u, e.v);
    const int v = std::max(e.u, e.v);
    known_edges.emplace_back(u, v);
    const double w = -std::log(e.prob);
    if (w > 0.0) {
      edge_pairs.emplace_back(u, v);
      edge_weights.push_back(w);
    }
  }

  std::vector<PenaltyComposite::Term> terms;
  terms.push_back({std::make_shared<PairProductCondition>(
                       inst.n, std::move(edge_pairs), std::move(edge_weights)),
                   1.0});
  terms.push_back({std::make_shared<PairProductCondition>(
                       PairProductCondition::clique_violations(
                           NonEdgeList::complement(inst.n, known_edges))),
                   beta_clique});
  terms.push_back({std::make_shared<CardinalityCondition>(
                       CardinalitySet::exactly(inst.k, inst.n)),
                   beta_card});
  return PenaltyComposite(std::move(terms));
}

PenaltyComposite build_rds(const RobustDominatingSetInstance& inst, double beta) {
  inst.validate();
  if (beta < 0.0) beta = 1.0;

  // Per-node uncoverable mass: prod over incident edges of (1 - P). Linear
  // in p: sum_i (1 - p_i) K_i.
  std::vector<double> uncoverable(static_cast<std::size_t>(inst.n), 1.0);
  for (const auto& e : inst.edges) {
    uncoverable[static_cast<std::size_t>(e.u)] *= 1.0 - e.prob;
    uncoverable[static_cast<std::size_t>(e.v)] *= 1.0 - e.prob;
  }
  double constant = 0.0;
  std::vector<double> coeffs(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    constant += uncoverable[static_cast<std::size_t>(i)];
    coeffs[static_cast<std::size_t>(i)] = -uncoverable[static_cast<std::size_t>(i)];
  }

  std::vector<PenaltyComposite::Term> terms;
  terms.push_back({std::make_shared<LinearCondition>(std::move(coeffs), constant), 1.0});
  terms.push_back({std::make_shared<CardinalityCondition>(
                       CardinalitySet::exactly(inst.k, inst.n)),
                   beta});
  return PenaltyComposite(std::move(terms));
}

ColorPenaltyComposite build_cc(const CliqueCoverInstance& inst, double beta) {
  inst.validate();
  if (beta < 0.0) beta = 1.0;
  NonEdgeList ne = NonEdgeList::complement(inst.n, inst.edges);
  std::vector<double> pair_weights(ne.pairs.size(), 1.0);

  std::vector<ColorPenaltyComposite::Term> terms;
  terms.push_back({std::make_shared<ColorUsedCondition>(inst.n, inst.c), 1.0});
  terms.push_back({std::make_shared<PairSameColorCondition>(
                       inst.n, inst.c, std::move(ne.pairs), std::move(pair_weights)),
                   beta});
  return ColorPenaltyComposite(std::move(terms));
}

ColorPenaltyComposite build_mst(const LayeredMstInstance& inst, double beta) {
  inst.validate();
  if (beta < 0.0) beta = 1.0;
  const int c = inst.c > 0 ? inst.c : inst.n;
  if (c < 2) throw std::invalid_argument("need at least two layers");

  std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(inst.n));
  std::vector<std::vector<double>> weight_to(
      static_cast<std::size_t>(inst.n),
      std::vector<double>(static_cast<std::size_t>(inst.n), kInf));
  for (const auto& e : inst.edges) {
    neighbors[static_cast<std::size_t>(e.u)].push_back(e.v);
    neighbors[static_cast<std::size_t>(e.v)].push_back(e.u);
    weight_to[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = std::min(
        weight_to[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)], e.w);
    weight_to[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = std::min(
        weight_to[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)], e.w);
  }
  for (auto& nb : neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  std::vector<DistanceProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    profiles.push_back(DistanceProfile::build(
        i, neighbors[static_cast<std::size_t>(i)], weight_to[static_cast<std::size_t>(i)]));
  }

  std::vector<ColorPenaltyComposite::Term> terms;
  terms.push_back({std::make_shared<LayerDistanceCondition>(inst.n, c, std::move(profiles)),
                   1.0});
  terms.push_back({std::make_shared<LayerCoverCondition>(inst.n, c, std::move(neighbors)),
                   beta});
  return ColorPenaltyComposite(std::move(terms));
}

// --------------------------------------------------------------------------
// Discrete evaluators
// --------------------------------------------------------------------------

double DiscreteReport::detail(const std::string& key) const {
  for (const auto& [name, value] : details) {
    if (name == key) return value;
  }
  throw std::out_of_range("no such report detail: " + key);
}

DiscreteReport evaluate_discrete(const FacilityInstance& inst,
                                 const DiscreteDecision& x) {
  x.validate();
  if (x.size() != inst.n || x.num_choices != 2) {
    throw std::invalid_argument("decision shape mismatch");
  }
  DiscreteReport report;
  report.problem = "fl";
  const auto chosen = chosen_nodes(x);
  const int card = static_cast<int>(chosen.size());
  report.details.emplace_back("cardinality", card);
  report.feasible = card == inst.k;
  if (!report.feasible) return report;  // objective stays at the inf sentinel

  double total = 0.0;
  for (int v = 0; v < inst.n; ++v) {
    double best = kInf;
    for (int u : chosen) best = std::min(best, inst.d(v, u));
    total += best;
  }
  report.objective = total;
  return report;
}

DiscreteReport evaluate_discrete(const CoverageInstance& inst,
                                 const DiscreteDecision& x) {
  inst.validate();
  x.validate();
  if (x.size() != inst.num_sets || x.num_choices != 2) {
    throw std::invalid_argument("decision shape mismatch");
  }
  DiscreteReport report;
  report.problem = "mc";
  const int card = chosen_count(x);
  report.feasible = card == inst.k;
  report.details.emplace_back("cardinality", card);

  std::vector<bool> covered(static_cast<std::size_t>(inst.num_items), false);
  for (int s = 0; s < inst.num_sets; ++s) {
    if (x.values[static_cast<std::size_t>(s)] != 1) continue;
    for (int j : inst.sets[static_cast<std::size_t>(s)]) {
      covered[static_cast<std::size_t>(j)] = true;
    }
  }
  double covered_weight = 0.0;
  int uncovered = 0;
  for (int j = 0; j < inst.num_items; ++j) {
    if (covered[static_cast<std::size_t>(j)]) {
      covered_weight += inst.weights[static_cast<std::size_t>(j)];
    } else {
      ++uncovered;
    }
  }
  report.objective = covered_weight;  // reported in the covered-weight convention
  report.details.emplace_back("uncovered_items", uncovered);
  report.details.emplace_back("uncovered_weight", inst.total_weight() - covered_weight);
  return report;
}

DiscreteReport evaluate_discrete(const RobustColoringInstance& inst,
                                 const DiscreteDecision& x) {
  inst.validate();
  x.validate();
  if (x.size() != inst.n || x.num_choices != inst.c) {
    throw std::invalid_argument("decision shape mismatch");
  }
  DiscreteReport report;
  report.problem = "rc";
  const UncertainEdgeList ue = inst.edge_list();
  int hard_violations = 0;
  for (const auto& [u, v] : ue.hard()) {
    if (x.values[static_cast<std::size_t>(u)] == x.values[static_cast<std::size_t>(v)]) {
      ++hard_violations;
    }
  }
  double soft_penalty = 0.0;
  int soft_violations = 0;
  for (std::size_t e = 0; e < ue.soft().size(); ++e) {
    const auto& edge = ue.soft()[e];
    if (x.values[static_cast<std::size_t>(edge.u)] ==
        x.values[static_cast<std::size_t>(edge.v)]) {
      soft_penalty += ue.soft_penalty(e);
      ++soft_violations;
    }
  }
  report.feasible = hard_violations == 0;
  report.objective = soft_penalty;
  report.details.emplace_back("hard_violations", hard_violations);
  report.details.emplace_back("soft_violations", soft_violations);
  return report;
}

DiscreteReport evaluate_discrete(const RobustCliqueInstance& inst,
                                 const DiscreteDecision& x) {
  inst.validate();
  x.validate();
  if (x.size() != inst.n || x.num_choices != 2) {
    throw std::invalid_argument("decision shape mismatch");
  }
  DiscreteReport report;
  report.problem = "rkc";
  const auto chosen = chosen_nodes(x);
  const int card = static_cast<int>(chosen.size());

  std::set<std::pair<int, int>> edges;
  std::vector<std::vector<double>> prob(
      static_cast<std::size_t>(inst.n),
      std::vector<double>(static_cast<std::size_t>(inst.n), 0.0));
  for (const auto& e : inst.edges) {
    const int u = std::min(e.u, e.v);
    const int v = std::max(e.u, e.v);
    edges.insert({u, v});
    prob[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = e.prob;
  }

  int missing_pairs = 0;
  double neg_log = 0.0;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      const int u = std::min(chosen[a], chosen[b]);
      const int v = std::max(chosen[a], chosen[b]);
      if (edges.count({u, v}) == 0) {
        ++missing_pairs;
      } else {
        neg_log -= std::log(prob[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
      }
    }
  }
  report.feasible = card == inst.k && missing_pairs == 0;
  report.objective = report.feasible ? neg_log : kInf;
  report.details.emplace_back("cardinality", card);
  report.details.emplace_back("missing_pairs", missing_pairs);
  return report;
}

DiscreteReport evaluate_discrete(const RobustDominatingSetInstance& inst,
                                 const DiscreteDecision& x) {
  inst.validate();
  x.validate();
  if (x.size() != inst.n || x.num_choices != 2) {
    throw std::invalid_argument("decision shape mismatch");
  }
  DiscreteReport report;
  report.problem = "rds";
  const int card = chosen_count(x);

  std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(inst.n));
  std::vector<double> uncoverable(static_cast<std::size_t>(inst.n), 1.0);
  for (const auto& e : inst.edges) {
    neighbors[static_cast<std::size_t>(e.u)].push_back(e.v);
    neighbors[static_cast<std::size_t>(e.v)].push_back(e.u);
    uncoverable[static_cast<std::size_t>(e.u)] *= 1.0 - e.prob;
    uncoverable[static_cast<std::size_t>(e.v)] *= 1.0 - e.prob;
  }

  // Deterministic domination: chosen nodes cover themselves (self-loops).
  int undominated = 0;
  double expected_uncovered = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    if (x.values[static_cast<std::size_t>(i)] == 1) continue;
    bool dominated = false;
    for (int v : neighbors[static_cast<std::size_t>(i)]) {
      if (x.values[static_cast<std::size_t>(v)] == 1) {
        dominated = true;
        break;
      }
    }
    if (!dominated) ++undominated;
    expected_uncovered += uncoverable[static_cast<std::size_t>(i)];
  }
  report.feasible = card == inst.k && undominated == 0;
  report.objective = expected_uncovered;
  report.details.emplace_back("cardinality", card);
  report.details.emplace_back("undominated", undominated);
  return report;
}

DiscreteReport evaluate_discrete(const CliqueCoverInstance& inst,
                                 const DiscreteDecision& x) {
  inst.validate();
  x.validate();
  if (x.size() != inst.n || x.num_choices != inst.c) {
    throw std::invalid_argument("decision shape mismatch");
  }
  DiscreteReport report;
  report.problem = "cc";

  std::set<std::pair<int, int>> edges;
  for (const auto& [u, v] : inst.edges) {
    edges.insert({std::min(u, v), std::max(u, v)});
  }
  int violating_pairs = 0;
  for (int u = 0; u < inst.n; ++u) {
    for (int v = u + 1; v < inst.n; ++v) {
      if (x.values[static_cast<std::size_t>(u)] != x.values[static_cast<std::size_t>(v)]) {
        continue;
      }
      if (edges.count({u, v}) == 0) ++violating_pairs;
    }
  }
  std::vector<bool> used(static_cast<std::size_t>(inst.c), false);
  for (int v : x.values) used[static_cast<std::size_t>(v)] = true;
  int groups_used = 0;
  for (bool u : used) groups_used += u ? 1 : 0;

  report.feasible = violating_pairs == 0;
  report.objective = static_cast<double>(groups_used + violating_pairs);
  report.details.emplace_back("violating_pairs", violating_pairs);
  report.details.emplace_back("groups_used", groups_used);
  return report;
}

DiscreteReport evaluate_discrete(const LayeredMstInstance& inst,
                                 const DiscreteDecision& x) {
  inst.validate();
  x.validate();
  const int c = inst.c > 0 ? inst.c : inst.n;
  if (x.size() != inst.n || x.num_choices != c) {
    throw std::invalid_argument("decision shape mismatch");
  }
  DiscreteReport report;
  report.problem = "mst";

  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(inst.n));
  for (const auto& e : inst.edges) {
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
  }

  int orphans = 0;
  int roots = 0;
  double total_weight = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    const int layer = x.values[static_cast<std::size_t>(i)];
    if (layer == 0) {
      ++roots;
      continue;
    }
    double best = kInf;
    for (const auto& [v, w] : adj[static_cast<std::size_t>(i)]) {
      if (x.values[static_cast<std::size_t>(v)] == layer - 1) best = std::min(best, w);
    }
    if (best == kInf) {
      ++orphans;
    } else {
      total_weight += best;
    }
  }
  report.feasible = orphans == 0;
  report.objective = report.feasible ? total_weight : kInf;
  report.details.emplace_back("orphans", orphans);
  report.details.emplace_back("roots", roots);
  return report;
}

}  // namespace ucom2
