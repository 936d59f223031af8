// Problem assemblies: instance types, penalty-composite builders, and exact
// discrete evaluators for facility location, maximum coverage, robust
// coloring, robust k-clique, robust dominating set, clique cover, and the
// layered minimum spanning tree.
#pragma once

#include <array>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ucom2/condition.hpp"
#include "ucom2/conditions.hpp"
#include "ucom2/poibin.hpp"
#include "ucom2/prob.hpp"

namespace ucom2 {

// Weighted candidate locations: 2-D points with squared Euclidean distances,
// or an explicit symmetric distance matrix.
struct FacilityInstance {
  int n = 0;
  int k = 0;
  std::vector<std::array<double, 2>> points;  // empty in matrix mode
  std::vector<double> dist;                   // n*n, row-major

  static FacilityInstance from_points(std::vector<std::array<double, 2>> points, int k);
  static FacilityInstance from_matrix(int n, std::vector<double> dist, int k);

  double d(int u, int v) const {
    return dist[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(v)];
  }
};

// Weighted items and candidate sets.
struct CoverageInstance {
  int num_sets = 0;
  int num_items = 0;
  int k = 0;
  std::vector<double> weights;         // per item, > 0
  std::vector<std::vector<int>> sets;  // set -> items

  std::vector<std::vector<int>> item_sets() const;  // item -> covering sets
  double total_weight() const;
  void validate() const;
};

// Uncertain conflict graph plus a color budget.
struct RobustColoringInstance {
  int n = 0;
  int c = 0;
  std::vector<UncertainEdge> edges;

  UncertainEdgeList edge_list() const { return UncertainEdgeList(n, edges); }
  void validate() const;
};

// Appendix problems.
struct RobustCliqueInstance {
  int n = 0;
  int k = 0;
  std::vector<UncertainEdge> edges;  // existence probabilities in (0, 1]
  void validate() const;
};

struct RobustDominatingSetInstance {
  int n = 0;
  int k = 0;
  std::vector<UncertainEdge> edges;
  void validate() const;
};

struct CliqueCoverInstance {
  int n = 0;
  int c = 0;
  std::vector<std::pair<int, int>> edges;
  void validate() const;
};

struct LayeredMstInstance {
  int n = 0;
  int c = 0;  // number of layers, defaults to n when non-positive
  struct Edge {
    int u = 0;
    int v = 0;
    double w = 0.0;
  };
  std::vector<Edge> edges;
  void validate() const;
};

// Composite builders. A negative beta selects the per-problem default.
PenaltyComposite build_fl(const FacilityInstance& inst, double beta = -1.0);
PenaltyComposite build_mc(const CoverageInstance& inst, double beta = -1.0);
ColorPenaltyComposite build_rc(const RobustColoringInstance& inst, double beta = -1.0);
PenaltyComposite build_rkc(const RobustCliqueInstance& inst, double beta_clique = -1.0,
                           double beta_card = -1.0);
PenaltyComposite build_rds(const RobustDominatingSetInstance& inst, double beta = -1.0);
ColorPenaltyComposite build_cc(const CliqueCoverInstance& inst, double beta = -1.0);
ColorPenaltyComposite build_mst(const LayeredMstInstance& inst, double beta = -1.0);

// Default constraint coefficients.
double default_beta_fl(const FacilityInstance& inst);
inline constexpr double kDefaultBetaMc = 500.0;
double default_beta_rc(const RobustColoringInstance& inst);

// Exact discrete objective with per-constraint feasibility.
struct DiscreteReport {
  std::string problem;
  double objective = std::numeric_limits<double>::infinity();
  bool feasible = false;
  std::vector<std::pair<std::string, double>> details;

  double detail(const std::string& key) const;
};

DiscreteReport evaluate_discrete(const FacilityInstance& inst, const DiscreteDecision& x);
DiscreteReport evaluate_discrete(const CoverageInstance& inst, const DiscreteDecision& x);
DiscreteReport evaluate_discrete(const RobustColoringInstance& inst, const DiscreteDecision& x);
DiscreteReport evaluate_discrete(const RobustCliqueInstance& inst, const DiscreteDecision& x);
DiscreteReport evaluate_discrete(const RobustDominatingSetInstance& inst, const DiscreteDecision& x);
DiscreteReport evaluate_discrete(const CliqueCoverInstance& inst, const DiscreteDecision& x);
DiscreteReport evaluate_discrete(const LayeredMstInstance& inst, const DiscreteDecision& x);

}  // namespace ucom2
