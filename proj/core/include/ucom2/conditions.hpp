// Closed-form expectation objectives and their incremental differences for
// the prevalent conditions: minimum w.r.t. a chosen subset, covering,
// cliques / independent sets, and same-color conflicts over uncertain edges.
#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "ucom2/condition.hpp"
#include "ucom2/prob.hpp"

namespace ucom2 {

// Candidates for one target node, sorted ascending by distance (ties broken
// by node index). order[j] is the node whose distance is dists[j].
struct DistanceProfile {
  int target = 0;
  std::vector<int> order;
  std::vector<double> dists;

  // Builds a profile from one row of a distance matrix restricted to the
  // given candidate nodes.
  static DistanceProfile build(int target, const std::vector<int>& candidates,
                               const std::vector<double>& dist_row);
};

// E min_{chosen v} d(target, v): sum_j q_j d_j with
// q_j = prod_{k<j} (1 - p_{v_k}) * p_{v_j}; the all-unchosen event adds 0.
double ms_eval(const DistanceProfile& prof, const ProbVector& p);

// Adds this profile's IDs into out (suffix-sum pass, O(candidates)):
//   Delta(v_j, 0) = -q_j d_j + p_{v_j}/(1-p_{v_j}) * sum_{j'>j} q_{j'} d_{j'}
//   Delta(v_j, 1) = sum_{j'>j} q_{j'} (d_j - d_{j'}) + r d_j
// where r = prod_k (1 - p_{v_k}) is the residual all-unchosen mass. The
// r d_j term makes the IDs exact for every clamped p.
void ms_ids(const DistanceProfile& prof, const ProbVector& p, IdTable& out);

// Neighbors that can cover one target.
struct NeighborList {
  int target = 0;
  std::vector<int> neighbors;
};

// Probability that the target is NOT covered: prod_{v in N} (1 - p_v);
// an empty neighborhood yields 1.
double cover_eval(const NeighborList& nb, const ProbVector& p);

// Adds the covering IDs into out; zero for nodes outside the neighborhood:
//   Delta(j, 0) = p_j * prod_{v in N, v != j} (1 - p_v)
//   Delta(j, 1) = -cover_eval(p)
void cover_ids(const NeighborList& nb, const ProbVector& p, IdTable& out);

// All unordered node pairs that violate the clique condition.
struct NonEdgeList {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // u < v, deduplicated

  // Complement pairs of an edge list over n nodes.
  static NonEdgeList complement(int n, const std::vector<std::pair<int, int>>& edges);
  void validate() const;
};

// Expected number of chosen non-adjacent pairs: sum_{(u,v)} p_u p_v.
double clique_eval(const NonEdgeList& ne, const ProbVector& p);

// Clique IDs with S_i = sum over non-neighbors j of p_j, one pass overall:
//   Delta(i, 0) = -p_i S_i,  Delta(i, 1) = (1 - p_i) S_i
void clique_ids(const NonEdgeList& ne, const ProbVector& p, IdTable& out);

// Uncertain conflict edges split into hard (P = 1) and soft (P < 1) parts.
// Soft probabilities are clamped below one before taking logs so that the
// penalty -log(1 - P) stays finite.
struct UncertainEdge {
  int u = 0;
  int v = 0;
  double prob = 1.0;
};

class UncertainEdgeList {
 public:
  // Drops zero-probability edges; classifies P = 1 as hard.
  UncertainEdgeList(int n, std::vector<UncertainEdge> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& hard() const { return hard_; }
  const std::vector<UncertainEdge>& soft() const { return soft_; }
  // Penalty weight -log(1 - P) of soft edge e.
  double soft_penalty(std::size_t e) const { return soft_penalty_[e]; }
  double max_soft_penalty() const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> hard_;
  std::vector<UncertainEdge> soft_;
  std::vector<double> soft_penalty_;
};

// (g1, f2): expected hard-conflict count and expected soft-conflict penalty,
//   g1 = sum_{(u,v) hard} sum_r p_ur p_vr
//   f2 = -sum_{(u,v) soft} sum_r p_ur p_vr log(1 - P)
std::pair<double, double> colorwise_conflict_eval(const UncertainEdgeList& ue,
                                                  const ProbMatrix& p);

// IDs of the two terms for every fractional row.
void colorwise_conflict_ids(const UncertainEdgeList& ue, const ProbMatrix& p,
                            IdTable& hard_out, IdTable& soft_out);

// ---------------------------------------------------------------------------
// Composable condition terms built on the formulas above.
// ---------------------------------------------------------------------------

// sum over profiles of E min-distance; the facility-location objective uses
// one profile per graph node.
class MinDistanceSumCondition final : public BinaryCondition {
 public:
  MinDistanceSumCondition(int n, std::vector<DistanceProfile> profiles);

  int size() const override { return n_; }
  double eval(const ProbVector& p) const override;
  void ids(const ProbVector& p, IdTable& out) const override;
  std::unique_ptr<BinaryTermState> start(const ProbVector& p) const override;

  const std::vector<DistanceProfile>& profiles() const { return profiles_; }

 private:
  int n_ = 0;
  std::vector<DistanceProfile> profiles_;
};

// sum over targets of weight * Pr[target uncovered]; the maximum-coverage
// objective uses one target per item with the sets containing it as
// neighbors.
class WeightedCoverCondition final : public BinaryCondition {
 public:
  WeightedCoverCondition(int n, std::vector<NeighborList> targets,
                         std::vector<double> weights);

  int size() const override { return n_; }
  double eval(const ProbVector& p) const override;
  void ids(const ProbVector& p, IdTable& out) const override;
  std::unique_ptr<BinaryTermState> start(const ProbVector& p) const override;

  double total_weight() const;

 private:
  int n_ = 0;
  std::vector<NeighborList> targets_;
  std::vector<double> weights_;
  std::vector<std::vector<std::pair<int, double>>> node_targets_;  // node -> (target idx, weight)
};

// sum over node pairs of w_uv p_u p_v. Weight 1 on every non-edge gives the
// clique violation count; -log P on edges gives the robust-clique penalty.
class PairProductCondition final : public BinaryCondition {
 public:
  PairProductCondition(int n, std::vector<std::pair<int, int>> pairs,
                       std::vector<double> weights);

  static PairProductCondition clique_violations(NonEdgeList ne);

  int size() const override { return n_; }
  double eval(const ProbVector& p) const override;
  void ids(const ProbVector& p, IdTable& out) const override;
  std::unique_ptr<BinaryTermState> start(const ProbVector& p) const override;

 private:
  void weighted_sums(const ProbVector& p, std::vector<double>& s) const;

  int n_ = 0;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<double> weights_;
  std::vector<std::vector<std::pair<int, double>>> adj_;  // node -> (other, weight)

  friend class PairProductState;
};

// constant + sum_i c_i p_i; covers the dominating-set uncoverability term
// and degenerate test objectives.
class LinearCondition final : public BinaryCondition {
 public:
  LinearCondition(std::vector<double> coeffs, double constant = 0.0);

  int size() const override { return static_cast<int>(coeffs_.size()); }
  double eval(const ProbVector& p) const override;
  void ids(const ProbVector& p, IdTable& out) const override;
  std::unique_ptr<BinaryTermState> start(const ProbVector& p) const override;

 private:
  std::vector<double> coeffs_;
  double constant_ = 0.0;
};

// sum over listed pairs of w_uv sum_r p_ur p_vr: expected weighted count of
// same-color pairs. Hard conflicts use weight 1, soft conflicts use
// -log(1 - P), clique cover uses weight 1 over non-edges.
class PairSameColorCondition final : public ColorCondition {
 public:
  PairSameColorCondition(int n, int c, std::vector<std::pair<int, int>> pairs,
                         std::vector<double> weights);

  static PairSameColorCondition hard_conflicts(const UncertainEdgeList& ue, int c);
  static PairSameColorCondition soft_conflicts(const UncertainEdgeList& ue, int c);

  int size() const override { return n_; }
  int num_colors() const override { return c_; }
  double eval(const ProbMatrix& p) const override;
  void ids(const ProbMatrix& p, IdTable& out) const override;
  std::unique_ptr<ColorTermState> start(const ProbMatrix& p) const override;

 private:
  int n_ = 0;
  int c_ = 0;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<double> weights_;
  std::vector<std::vector<std::pair<int, double>>> adj_;

  friend class PairSameColorState;
};

// sum_r (1 - prod_i (1 - p_ir)): expected number of colors in use.
class ColorUsedCondition final : public ColorCondition {
 public:
  ColorUsedCondition(int n, int c);

  int size() const override { return n_; }
  int num_colors() const override { return c_; }
  double eval(const ProbMatrix& p) const override;
  void ids(const ProbMatrix& p, IdTable& out) const override;
  std::unique_ptr<ColorTermState> start(const ProbMatrix& p) const override;

 private:
  int n_ = 0;
  int c_ = 0;
};

// Fallback base for color conditions without closed-form IDs: IDs are
// computed by local derandomization and re-evaluation. Used by the layered
// spanning-tree terms whose cross-layer coupling has no published ID form.
class GenericIdsColorCondition : public ColorCondition {
 public:
  void ids(const ProbMatrix& p, IdTable& out) const override;
  std::unique_ptr<ColorTermState> start(const ProbMatrix& p) const override;
};

// Expected number of nodes violating the layering condition: a node must be
// in layer 0 or have a neighbor in the layer directly below its own.
class LayerCoverCondition final : public GenericIdsColorCondition {
 public:
  LayerCoverCondition(int n, int c, std::vector<std::vector<int>> neighbors);

  int size() const override { return n_; }
  int num_colors() const override { return c_; }
  double eval(const ProbMatrix& p) const override;

 private:
  int n_ = 0;
  int c_ = 0;
  std::vector<std::vector<int>> neighbors_;
};

// Expected total parent-edge weight of the layering: for every node i and
// layer l > 0, p_il times the expected min distance to a neighbor chosen
// into layer l - 1.
class LayerDistanceCondition final : public GenericIdsColorCondition {
 public:
  LayerDistanceCondition(int n, int c, std::vector<DistanceProfile> profiles);

  int size() const override { return n_; }
  int num_colors() const override { return c_; }
  double eval(const ProbMatrix& p) const override;

 private:
  int n_ = 0;
  int c_ = 0;
  std::vector<DistanceProfile> profiles_;  // one per node, over its neighbors
};

}  // namespace ucom2
