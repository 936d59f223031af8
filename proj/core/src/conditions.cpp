#include "ucom2/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ucom2 {

namespace {

constexpr double kSoftProbCap = 1.0 - 1e-12;

bool entry_fractional(double v) { return v != 0.0 && v != 1.0; }

// Evaluates the min-w.r.t.-subset expectation with an arbitrary probability
// accessor, so binary vectors and matrix columns share one code path.
template <class GetP>
double ms_eval_impl(const DistanceProfile& prof, GetP&& getp) {
  double prefix = 1.0;
  double total = 0.0;
  for (std::size_t j = 0; j < prof.order.size(); ++j) {
    const double pj = getp(prof.order[j]);
    total += prefix * pj * prof.dists[j];
    prefix *= 1.0 - pj;
    if (prefix == 0.0) break;
  }
  return total;
}

// Product with exclusion support: tracks exact-zero factors separately so a
// single committed node does not wipe out the information needed for the
// leave-one-out products.
struct ExclusionProduct {
  double nonzero = 1.0;
  int zeros = 0;

  void mul(double factor) {
    if (factor == 0.0) {
      ++zeros;
    } else {
      nonzero *= factor;
    }
  }
  void div(double factor) {
    if (factor == 0.0) {
      --zeros;
    } else {
      nonzero /= factor;
    }
  }
  double full() const { return zeros > 0 ? 0.0 : nonzero; }
  // Product with one nonzero factor left out.
  double without(double factor) const {
    return zeros > 0 ? 0.0 : nonzero / factor;
  }
};

}  // namespace

DistanceProfile DistanceProfile::build(int target,
                                       const std::vector<int>& candidates,
                                       const std::vector<double>& dist_row) {
  DistanceProfile prof;
  prof.target = target;
  prof.order = candidates;
  std::sort(prof.order.begin(), prof.order.end(), [&](int a, int b) {
    const double da = dist_row[static_cast<std::size_t>(a)];
    const double db = dist_row[static_cast<std::size_t>(b)];
    if (da != db) return da < db;
    return a < b;
  });
  prof.dists.reserve(prof.order.size());
  for (int v : prof.order) prof.dists.push_back(dist_row[static_cast<std::size_t>(v)]);
  return prof;
}

double ms_eval(const DistanceProfile& prof, const ProbVector& p) {
  return ms_eval_impl(prof, [&](int v) { return p[v]; });
}

void ms_ids(const DistanceProfile& prof, const ProbVector& p, IdTable& out) {
  const int m = static_cast<int>(prof.order.size());
  if (m == 0) return;

  // Coefficients q_j and the residual all-unchosen mass r.
  std::vector<double> q(static_cast<std::size_t>(m));
  double prefix = 1.0;
  for (int j = 0; j < m; ++j) {
    const double pj = p[prof.order[static_cast<std::size_t>(j)]];
    q[static_cast<std::size_t>(j)] = prefix * pj;
    prefix *= 1.0 - pj;
  }
  const double residual = prefix;

  // Suffix sums of q and q*d, then one O(1) update per candidate.
  double sum_q = 0.0;
  double sum_qd = 0.0;
  for (int j = m - 1; j >= 0; --j) {
    const int node = prof.order[static_cast<std::size_t>(j)];
    const double dj = prof.dists[static_cast<std::size_t>(j)];
    const double pj = p[node];
    if (entry_fractional(pj)) {
      const double qj = q[static_cast<std::size_t>(j)];
      out.at(node, 0) += -qj * dj + pj / (1.0 - pj) * sum_qd;
      out.at(node, 1) += dj * (sum_q + residual) - sum_qd;
    }
    sum_q += q[static_cast<std::size_t>(j)];
    sum_qd += q[static_cast<std::size_t>(j)] * dj;
  }
}

double cover_eval(const NeighborList& nb, const ProbVector& p) {
  double prod = 1.0;
  for (int v : nb.neighbors) {
    prod *= 1.0 - p[v];
    if (prod == 0.0) break;
  }
  return prod;
}

void cover_ids(const NeighborList& nb, const ProbVector& p, IdTable& out) {
  ExclusionProduct prod;
  for (int v : nb.neighbors) prod.mul(1.0 - p[v]);
  const double uncovered = prod.full();
  for (int v : nb.neighbors) {
    const double pv = p[v];
    if (!entry_fractional(pv)) continue;
    out.at(v, 0) += pv * prod.without(1.0 - pv);
    out.at(v, 1) += -uncovered;
  }
}

NonEdgeList NonEdgeList::complement(int n,
                                    const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> adj(
      static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
  }
  NonEdgeList ne;
  ne.n = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) {
        ne.pairs.emplace_back(u, v);
      }
    }
  }
  return ne;
}

void NonEdgeList::validate() const {
  for (const auto& [u, v] : pairs) {
    if (u < 0 || v >= n || u >= v) {
      throw std::invalid_argument("non-edge pairs must satisfy 0 <= u < v < n");
    }
  }
}

double clique_eval(const NonEdgeList& ne, const ProbVector& p) {
  double total = 0.0;
  for (const auto& [u, v] : ne.pairs) total += p[u] * p[v];
  return total;
}

void clique_ids(const NonEdgeList& ne, const ProbVector& p, IdTable& out) {
  std::vector<double> s(static_cast<std::size_t>(ne.n), 0.0);
  for (const auto& [u, v] : ne.pairs) {
    s[static_cast<std::size_t>(u)] += p[v];
    s[static_cast<std::size_t>(v)] += p[u];
  }
  for (int i = 0; i < ne.n; ++i) {
    const double pi = p[i];
    if (!entry_fractional(pi)) continue;
    out.at(i, 0) += -pi * s[static_cast<std::size_t>(i)];
    out.at(i, 1) += (1.0 - pi) * s[static_cast<std::size_t>(i)];
  }
}

UncertainEdgeList::UncertainEdgeList(int n, std::vector<UncertainEdge> edges)
    : n_(n) {
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw std::invalid_argument("uncertain edge endpoints out of range");
    }
    if (!(e.prob >= 0.0 && e.prob <= 1.0)) {
      throw std::invalid_argument("edge probability outside [0, 1]");
    }
    if (e.prob == 0.0) continue;  // never materializes
    if (e.prob == 1.0) {
      hard_.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    } else {
      UncertainEdge s = e;
      if (s.u > s.v) std::swap(s.u, s.v);
      soft_.push_back(s);
      soft_penalty_.push_back(-std::log1p(-std::min(s.prob, kSoftProbCap)));
    }
  }
}

double UncertainEdgeList::max_soft_penalty() const {
  double best = 0.0;
  for (double w : soft_penalty_) best = std::max(best, w);
  return best;
}

std::pair<double, double> colorwise_conflict_eval(const UncertainEdgeList& ue,
                                                  const ProbMatrix& p) {
  const int c = p.cols();
  double g1 = 0.0;
  for (const auto& [u, v] : ue.hard()) {
    const double* pu = p.row(u);
    const double* pv = p.row(v);
    for (int r = 0; r < c; ++r) g1 += pu[r] * pv[r];
  }
  double f2 = 0.0;
  for (std::size_t e = 0; e < ue.soft().size(); ++e) {
    const auto& edge = ue.soft()[e];
    const double* pu = p.row(edge.u);
    const double* pv = p.row(edge.v);
    double same = 0.0;
    for (int r = 0; r < c; ++r) same += pu[r] * pv[r];
    f2 += same * ue.soft_penalty(e);
  }
  return {g1, f2};
}

namespace {

// Shared ID pass for weighted same-color pair objectives: with
// W(i, r) = sum over listed neighbors j of w_ij p_jr,
//   Delta(i, x) = W(i, x) - sum_r p_ir W(i, r).
void same_color_ids_from_aggregate(const ProbMatrix& p,
                                   const std::vector<double>& w_table,
                                   IdTable& out) {
  const int n = p.rows();
  const int c = p.cols();
  for (int i = 0; i < n; ++i) {
    if (p.row_discrete(i)) continue;
    const double* w_row = w_table.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    const double* p_row = p.row(i);
    double base = 0.0;
    for (int r = 0; r < c; ++r) base += p_row[r] * w_row[r];
    for (int x = 0; x < c; ++x) out.at(i, x) += w_row[x] - base;
  }
}

void accumulate_same_color_aggregate(const std::vector<std::pair<int, int>>& pairs,
                                     const std::vector<double>& weights,
                                     const ProbMatrix& p,
                                     std::vector<double>& w_table) {
  const int c = p.cols();
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    const auto& [u, v] = pairs[e];
    const double w = weights[e];
    const double* pu = p.row(u);
    const double* pv = p.row(v);
    double* wu = w_table.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(c);
    double* wv = w_table.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(c);
    for (int r = 0; r < c; ++r) {
      wu[r] += w * pv[r];
      wv[r] += w * pu[r];
    }
  }
}

}  // namespace

void colorwise_conflict_ids(const UncertainEdgeList& ue, const ProbMatrix& p,
                            IdTable& hard_out, IdTable& soft_out) {
  const int n = p.rows();
  const int c = p.cols();
  std::vector<double> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(c), 0.0);

  std::vector<double> ones(ue.hard().size(), 1.0);
  accumulate_same_color_aggregate(ue.hard(), ones, p, table);
  same_color_ids_from_aggregate(p, table, hard_out);

  std::fill(table.begin(), table.end(), 0.0);
  std::vector<std::pair<int, int>> soft_pairs;
  soft_pairs.reserve(ue.soft().size());
  std::vector<double> soft_w;
  soft_w.reserve(ue.soft().size());
  for (std::size_t e = 0; e < ue.soft().size(); ++e) {
    soft_pairs.emplace_back(ue.soft()[e].u, ue.soft()[e].v);
    soft_w.push_back(ue.soft_penalty(e));
  }
  accumulate_same_color_aggregate(soft_pairs, soft_w, p, table);
  same_color_ids_from_aggregate(p, table, soft_out);
}

// --------------------------------------------------------------------------
// MinDistanceSumCondition
// --------------------------------------------------------------------------

MinDistanceSumCondition::MinDistanceSumCondition(
    int n, std::vector<DistanceProfile> profiles)
    : n_(n), profiles_(std::move(profiles)) {
  for (const auto& prof : profiles_) {
    if (prof.order.size() != prof.dists.size()) {
      throw std::invalid_argument("profile order/dists size mismatch");
    }
    for (std::size_t j = 1; j < prof.dists.size(); ++j) {
      if (prof.dists[j] < prof.dists[j - 1]) {
        throw std::invalid_argument("profile distances must be sorted");
      }
    }
    for (int v : prof.order) {
      if (v < 0 || v >= n) throw std::out_of_range("profile node out of range");
    }
  }
}

double MinDistanceSumCondition::eval(const ProbVector& p) const {
  double total = 0.0;
  for (const auto& prof : profiles_) total += ms_eval(prof, p);
  return total;
}

void MinDistanceSumCondition::ids(const ProbVector& p, IdTable& out) const {
  for (const auto& prof : profiles_) ms_ids(prof, p, out);
}

namespace {

class MinDistanceSumState final : public BinaryTermState {
 public:
  MinDistanceSumState(const MinDistanceSumCondition& cond, const ProbVector& p)
      : cond_(&cond), cur_(p) {}

  double value() const override { return cond_->eval(cur_); }

  void fill_ids(IdTable& out) const override { cond_->ids(cur_, out); }

  void row_ids(int i, double& d0, double& d1) const override {
    IdTable table(cond_->size(), 2);
    cond_->ids(cur_, table);
    d0 = table.at(i, 0);
    d1 = table.at(i, 1);
  }

  void commit(int i, int x, double) override { cur_.set_discrete(i, x); }

 private:
  const MinDistanceSumCondition* cond_;
  ProbVector cur_;
};

}  // namespace

std::unique_ptr<BinaryTermState> MinDistanceSumCondition::start(
    const ProbVector& p) const {
  return std::make_unique<MinDistanceSumState>(*this, p);
}

// --------------------------------------------------------------------------
// WeightedCoverCondition
// --------------------------------------------------------------------------

WeightedCoverCondition::WeightedCoverCondition(int n,
                                               std::vector<NeighborList> targets,
                                               std::vector<double> weights)
    : n_(n), targets_(std::move(targets)), weights_(std::move(weights)) {
  if (targets_.size() != weights_.size()) {
    throw std::invalid_argument("one weight per covering target required");
  }
  node_targets_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t t = 0; t < targets_.size(); ++t) {
    for (int v : targets_[t].neighbors) {
      if (v < 0 || v >= n) throw std::out_of_range("neighbor out of range");
      node_targets_[static_cast<std::size_t>(v)].emplace_back(static_cast<int>(t),
                                                              weights_[t]);
    }
  }
}

double WeightedCoverCondition::eval(const ProbVector& p) const {
  double total = 0.0;
  for (std::size_t t = 0; t < targets_.size(); ++t) {
    total += weights_[t] * cover_eval(targets_[t], p);
  }
  return total;
}

void WeightedCoverCondition::ids(const ProbVector& p, IdTable& out) const {
  IdTable one(n_, 2);
  for (std::size_t t = 0; t < targets_.size(); ++t) {
    one.fill(0.0);
    cover_ids(targets_[t], p, one);
    const double w = weights_[t];
    for (int v : targets_[t].neighbors) {
      out.at(v, 0) += w * one.at(v, 0);
      out.at(v, 1) += w * one.at(v, 1);
    }
  }
}

double WeightedCoverCondition::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

namespace {

class WeightedCoverState final : public BinaryTermState {
 public:
  WeightedCoverState(const WeightedCoverCondition& cond,
                     const std::vector<NeighborList>& targets,
                     const std::vector<double>& weights,
                     const std::vector<std::vector<std::pair<int, double>>>& node_targets,
                     const ProbVector& p)
      : cond_(&cond), targets_(&targets), weights_(&weights),
        node_targets_(&node_targets), cur_(p) {
    products_.resize(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
      for (int v : targets[t].neighbors) products_[t].mul(1.0 - p[v]);
    }
  }

  double value() const override {
    double total = 0.0;
    for (std::size_t t = 0; t < products_.size(); ++t) {
      total += (*weights_)[t] * products_[t].full();
    }
    return total;
  }

  void fill_ids(IdTable& out) const override {
    for (std::size_t t = 0; t < targets_->size(); ++t) {
      const double w = (*weights_)[t];
      const auto& prod = products_[t];
      const double uncovered = prod.full();
      for (int v : (*targets_)[t].neighbors) {
        const double pv = cur_[v];
        if (!entry_fractional(pv)) continue;
        out.at(v, 0) += w * pv * prod.without(1.0 - pv);
        out.at(v, 1) += -w * uncovered;
      }
    }
  }

  void row_ids(int i, double& d0, double& d1) const override {
    d0 = 0.0;
    d1 = 0.0;
    const double pi = cur_[i];
    for (const auto& [t, w] : (*node_targets_)[static_cast<std::size_t>(i)]) {
      const auto& prod = products_[static_cast<std::size_t>(t)];
      d0 += w * pi * prod.without(1.0 - pi);
      d1 += -w * prod.full();
    }
  }

  void commit(int i, int x, double old_pi) override {
    cur_.set_discrete(i, x);
    const double new_factor = x == 1 ? 0.0 : 1.0;
    for (const auto& [t, w] : (*node_targets_)[static_cast<std::size_t>(i)]) {
      (void)w;
      auto& prod = products_[static_cast<std::size_t>(t)];
      prod.div(1.0 - old_pi);
      prod.mul(new_factor);
    }
  }

 private:
  const WeightedCoverCondition* cond_;
  const std::vector<NeighborList>* targets_;
  const std::vector<double>* weights_;
  const std::vector<std::vector<std::pair<int, double>>>* node_targets_;
  ProbVector cur_;
  std::vector<ExclusionProduct> products_;
};

}  // namespace

std::unique_ptr<BinaryTermState> WeightedCoverCondition::start(
    const ProbVector& p) const {
  return std::make_unique<WeightedCoverState>(*this, targets_, weights_,
                                              node_targets_, p);
}

// --------------------------------------------------------------------------
// PairProductCondition
// --------------------------------------------------------------------------

PairProductCondition::PairProductCondition(int n,
                                           std::vector<std::pair<int, int>> pairs,
                                           std::vector<double> weights)
    : n_(n), pairs_(std::move(pairs)), weights_(std::move(weights)) {
  if (pairs_.size() != weights_.size()) {
    throw std::invalid_argument("one weight per pair required");
  }
  adj_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t e = 0; e < pairs_.size(); ++e) {
    const auto& [u, v] = pairs_[e];
    if (u < 0 || v >= n_ || u >= v) {
      throw std::invalid_argument("pairs must satisfy 0 <= u < v < n");
    }
    adj_[static_cast<std::size_t>(u)].emplace_back(v, weights_[e]);
    adj_[static_cast<std::size_t>(v)].emplace_back(u, weights_[e]);
  }
}

PairProductCondition PairProductCondition::clique_violations(NonEdgeList ne) {
  ne.validate();
  return PairProductCondition(ne.n, std::move(ne.pairs),
                              std::vector<double>(ne.pairs.size(), 1.0));
}

double PairProductCondition::eval(const ProbVector& p) const {
  double total = 0.0;
  for (std::size_t e = 0; e < pairs_.size(); ++e) {
    total += weights_[e] * p[pairs_[e].first] * p[pairs_[e].second];
  }
  return total;
}

void PairProductCondition::weighted_sums(const ProbVector& p,
                                         std::vector<double>& s) const {
  s.assign(static_cast<std::size_t>(n_), 0.0);
  for (std::size_t e = 0; e < pairs_.size(); ++e) {
    const auto& [u, v] = pairs_[e];
    s[static_cast<std::size_t>(u)] += weights_[e] * p[v];
    s[static_cast<std::size_t>(v)] += weights_[e] * p[u];
  }
}

void PairProductCondition::ids(const ProbVector& p, IdTable& out) const {
  std::vector<double> s;
  weighted_sums(p, s);
  for (int i = 0; i < n_; ++i) {
    const double pi = p[i];
    if (!entry_fractional(pi)) continue;
    out.at(i, 0) += -pi * s[static_cast<std::size_t>(i)];
    out.at(i, 1) += (1.0 - pi) * s[static_cast<std::size_t>(i)];
  }
}

class PairProductState final : public BinaryTermState {
 public:
  PairProductState(const PairProductCondition& cond, const ProbVector& p)
      : cond_(&cond), cur_(p) {
    cond.weighted_sums(p, sums_);
    value_ = cond.eval(p);
  }

  double value() const override { return value_; }

  void fill_ids(IdTable& out) const override {
    for (int i = 0; i < cond_->size(); ++i) {
      const double pi = cur_[i];
      if (!entry_fractional(pi)) continue;
      out.at(i, 0) += -pi * sums_[static_cast<std::size_t>(i)];
      out.at(i, 1) += (1.0 - pi) * sums_[static_cast<std::size_t>(i)];
    }
  }

  void row_ids(int i, double& d0, double& d1) const override {
    const double pi = cur_[i];
    d0 = -pi * sums_[static_cast<std::size_t>(i)];
    d1 = (1.0 - pi) * sums_[static_cast<std::size_t>(i)];
  }

  void commit(int i, int x, double old_pi) override {
    const double delta = static_cast<double>(x) - old_pi;
    value_ += delta * sums_[static_cast<std::size_t>(i)];
    for (const auto& [j, w] : cond_->adj_[static_cast<std::size_t>(i)]) {
      sums_[static_cast<std::size_t>(j)] += w * delta;
    }
    cur_.set_discrete(i, x);
  }

 private:
  const PairProductCondition* cond_;
  ProbVector cur_;
  std::vector<double> sums_;
  double value_ = 0.0;
};

std::unique_ptr<BinaryTermState> PairProductCondition::start(
    const ProbVector& p) const {
  return std::make_unique<PairProductState>(*this, p);
}

// --------------------------------------------------------------------------
// LinearCondition
// --------------------------------------------------------------------------

LinearCondition::LinearCondition(std::vector<double> coeffs, double constant)
    : coeffs_(std::move(coeffs)), constant_(constant) {}

double LinearCondition::eval(const ProbVector& p) const {
  double total = constant_;
  for (int i = 0; i < size(); ++i) total += coeffs_[static_cast<std::size_t>(i)] * p[i];
  return total;
}

void LinearCondition::ids(const ProbVector& p, IdTable& out) const {
  for (int i = 0; i < size(); ++i) {
    const double pi = p[i];
    if (!entry_fractional(pi)) continue;
    const double ci = coeffs_[static_cast<std::size_t>(i)];
    out.at(i, 0) += -ci * pi;
    out.at(i, 1) += ci * (1.0 - pi);
  }
}

namespace {

class LinearState final : public BinaryTermState {
 public:
  LinearState(const LinearCondition& cond, const ProbVector& p)
      : cond_(&cond), cur_(p) {}

  double value() const override { return cond_->eval(cur_); }
  void fill_ids(IdTable& out) const override { cond_->ids(cur_, out); }
  void row_ids(int i, double& d0, double& d1) const override {
    IdTable table(cond_->size(), 2);
    cond_->ids(cur_, table);
    d0 = table.at(i, 0);
    d1 = table.at(i, 1);
  }
  void commit(int i, int x, double) override { cur_.set_discrete(i, x); }

 private:
  const LinearCondition* cond_;
  ProbVector cur_;
};

}  // namespace

std::unique_ptr<BinaryTermState> LinearCondition::start(const ProbVector& p) const {
  return std::make_unique<LinearState>(*this, p);
}

// --------------------------------------------------------------------------
// PairSameColorCondition
// --------------------------------------------------------------------------

PairSameColorCondition::PairSameColorCondition(
    int n, int c, std::vector<std::pair<int, int>> pairs,
    std::vector<double> weights)
    : n_(n), c_(c), pairs_(std::move(pairs)), weights_(std::move(weights)) {
  if (pairs_.size() != weights_.size()) {
    throw std::invalid_argument("one weight per pair required");
  }
  adj_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t e = 0; e < pairs_.size(); ++e) {
    const auto& [u, v] = pairs_[e];
    if (u < 0 || v >= n_ || u >= v) {
      throw std::invalid_argument("pairs must satisfy 0 <= u < v < n");
    }
    adj_[static_cast<std::size_t>(u)].emplace_back(v, weights_[e]);
    adj_[static_cast<std::size_t>(v)].emplace_back(u, weights_[e]);
  }
}

PairSameColorCondition PairSameColorCondition::hard_conflicts(
    const UncertainEdgeList& ue, int c) {
  return PairSameColorCondition(ue.n(), c, ue.hard(),
                                std::vector<double>(ue.hard().size(), 1.0));
}

PairSameColorCondition PairSameColorCondition::soft_conflicts(
    const UncertainEdgeList& ue, int c) {
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> weights;
  pairs.reserve(ue.soft().size());
  for (std::size_t e = 0; e < ue.soft().size(); ++e) {
    pairs.emplace_back(ue.soft()[e].u, ue.soft()[e].v);
    weights.push_back(ue.soft_penalty(e));
  }
  return PairSameColorCondition(ue.n(), c, std::move(pairs), std::move(weights));
}

double PairSameColorCondition::eval(const ProbMatrix& p) const {
  double total = 0.0;
  for (std::size_t e = 0; e < pairs_.size(); ++e) {
    const double* pu = p.row(pairs_[e].first);
    const double* pv = p.row(pairs_[e].second);
    double same = 0.0;
    for (int r = 0; r < c_; ++r) same += pu[r] * pv[r];
    total += weights_[e] * same;
  }
  return total;
}

void PairSameColorCondition::ids(const ProbMatrix& p, IdTable& out) const {
  std::vector<double> table(static_cast<std::size_t>(n_) * static_cast<std::size_t>(c_), 0.0);
  accumulate_same_color_aggregate(pairs_, weights_, p, table);
  same_color_ids_from_aggregate(p, table, out);
}

class PairSameColorState final : public ColorTermState {
 public:
  PairSameColorState(const PairSameColorCondition& cond, const ProbMatrix& p)
      : cond_(&cond), cur_(p),
        table_(static_cast<std::size_t>(cond.size()) *
                   static_cast<std::size_t>(cond.num_colors()),
               0.0) {
    accumulate_same_color_aggregate(cond.pairs_, cond.weights_, p, table_);
    value_ = cond.eval(p);
  }

  double value() const override { return value_; }

  void fill_ids(IdTable& out) const override {
    same_color_ids_from_aggregate(cur_, table_, out);
  }

  void row_ids(int i, double* out_c) const override {
    const int c = cond_->num_colors();
    const double* w_row = table_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    const double* p_row = cur_.row(i);
    double base = 0.0;
    for (int r = 0; r < c; ++r) base += p_row[r] * w_row[r];
    for (int x = 0; x < c; ++x) out_c[x] = w_row[x] - base;
  }

  void commit(int i, int x, const double* old_row) override {
    const int c = cond_->num_colors();
    const double* w_row = table_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    for (int r = 0; r < c; ++r) {
      const double diff = (r == x ? 1.0 : 0.0) - old_row[r];
      value_ += diff * w_row[r];
    }
    for (const auto& [j, w] : cond_->adj_[static_cast<std::size_t>(i)]) {
      double* wj = table_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(c);
      for (int r = 0; r < c; ++r) {
        wj[r] += w * ((r == x ? 1.0 : 0.0) - old_row[r]);
      }
    }
    cur_.set_discrete(i, x);
  }

 private:
  const PairSameColorCondition* cond_;
  ProbMatrix cur_;
  std::vector<double> table_;
  double value_ = 0.0;
};

std::unique_ptr<ColorTermState> PairSameColorCondition::start(
    const ProbMatrix& p) const {
  return std::make_unique<PairSameColorState>(*this, p);
}

// --------------------------------------------------------------------------
// ColorUsedCondition
// --------------------------------------------------------------------------

ColorUsedCondition::ColorUsedCondition(int n, int c) : n_(n), c_(c) {}

double ColorUsedCondition::eval(const ProbMatrix& p) const {
  double total = 0.0;
  for (int r = 0; r < c_; ++r) {
    double empty = 1.0;
    for (int i = 0; i < n_; ++i) {
      empty *= 1.0 - p.at(i, r);
      if (empty == 0.0) break;
    }
    total += 1.0 - empty;
  }
  return total;
}

void ColorUsedCondition::ids(const ProbMatrix& p, IdTable& out) const {
  std::vector<ExclusionProduct> empties(static_cast<std::size_t>(c_));
  for (int r = 0; r < c_; ++r) {
    for (int i = 0; i < n_; ++i) empties[static_cast<std::size_t>(r)].mul(1.0 - p.at(i, r));
  }
  double total_empty = 0.0;
  for (int r = 0; r < c_; ++r) total_empty += empties[static_cast<std::size_t>(r)].full();

  for (int i = 0; i < n_; ++i) {
    if (p.row_discrete(i)) continue;
    // der(i, x) leaves color x certainly used; every other color r loses
    // row i's mass, leaving the leave-one-out empty probability.
    double sum_without = 0.0;
    for (int r = 0; r < c_; ++r) {
      sum_without += empties[static_cast<std::size_t>(r)].without(1.0 - p.at(i, r));
    }
    for (int x = 0; x < c_; ++x) {
      const double without_x =
          empties[static_cast<std::size_t>(x)].without(1.0 - p.at(i, x));
      // Delta = (sum of new empties) - (sum of old empties), negated through
      // the "used" sign: used = c - sum(empty).
      out.at(i, x) += total_empty - (sum_without - without_x);
    }
  }
}

namespace {

class ColorUsedState final : public ColorTermState {
 public:
  ColorUsedState(const ColorUsedCondition& cond, int n, int c, const ProbMatrix& p)
      : n_(n), c_(c), cond_(&cond), cur_(p),
        empties_(static_cast<std::size_t>(c)) {
    for (int r = 0; r < c_; ++r) {
      for (int i = 0; i < n_; ++i) empties_[static_cast<std::size_t>(r)].mul(1.0 - p.at(i, r));
    }
  }

  double value() const override {
    double total = 0.0;
    for (int r = 0; r < c_; ++r) {
      total += 1.0 - empties_[static_cast<std::size_t>(r)].full();
    }
    return total;
  }

  void fill_ids(IdTable& out) const override {
    double total_empty = 0.0;
    for (int r = 0; r < c_; ++r) total_empty += empties_[static_cast<std::size_t>(r)].full();
    for (int i = 0; i < n_; ++i) {
      if (cur_.row_discrete(i)) continue;
      double sum_without = 0.0;
      for (int r = 0; r < c_; ++r) {
        sum_without += empties_[static_cast<std::size_t>(r)].without(1.0 - cur_.at(i, r));
      }
      for (int x = 0; x < c_; ++x) {
        const double without_x =
            empties_[static_cast<std::size_t>(x)].without(1.0 - cur_.at(i, x));
        out.at(i, x) += total_empty - (sum_without - without_x);
      }
    }
  }

  void row_ids(int i, double* out_c) const override {
    double total_empty = 0.0;
    double sum_without = 0.0;
    for (int r = 0; r < c_; ++r) {
      total_empty += empties_[static_cast<std::size_t>(r)].full();
      sum_without += empties_[static_cast<std::size_t>(r)].without(1.0 - cur_.at(i, r));
    }
    for (int x = 0; x < c_; ++x) {
      const double without_x =
          empties_[static_cast<std::size_t>(x)].without(1.0 - cur_.at(i, x));
      out_c[x] = total_empty - (sum_without - without_x);
    }
  }

  void commit(int i, int x, const double* old_row) override {
    for (int r = 0; r < c_; ++r) {
      auto& prod = empties_[static_cast<std::size_t>(r)];
      prod.div(1.0 - old_row[r]);
      prod.mul(r == x ? 0.0 : 1.0);
    }
    cur_.set_discrete(i, x);
  }

 private:
  int n_;
  int c_;
  const ColorUsedCondition* cond_;
  ProbMatrix cur_;
  std::vector<ExclusionProduct> empties_;
};

}  // namespace

std::unique_ptr<ColorTermState> ColorUsedCondition::start(const ProbMatrix& p) const {
  return std::make_unique<ColorUsedState>(*this, n_, c_, p);
}

// --------------------------------------------------------------------------
// GenericIdsColorCondition
// --------------------------------------------------------------------------

void GenericIdsColorCondition::ids(const ProbMatrix& p, IdTable& out) const {
  const double base = eval(p);
  ProbMatrix scratch = p;
  for (int i = 0; i < p.rows(); ++i) {
    if (p.row_discrete(i)) continue;
    for (int x = 0; x < p.cols(); ++x) {
      scratch.set_row_raw(i, p.row(i));
      scratch.set_discrete(i, x);
      out.at(i, x) += eval(scratch) - base;
    }
    scratch.set_row_raw(i, p.row(i));
  }
}

namespace {

class GenericColorState final : public ColorTermState {
 public:
  GenericColorState(const ColorCondition& cond, const ProbMatrix& p)
      : cond_(&cond), cur_(p) {}

  double value() const override { return cond_->eval(cur_); }

  void fill_ids(IdTable& out) const override { cond_->ids(cur_, out); }

  void row_ids(int i, double* out_c) const override {
    const double base = cond_->eval(cur_);
    ProbMatrix scratch = cur_;
    for (int x = 0; x < cur_.cols(); ++x) {
      scratch.set_row_raw(i, cur_.row(i));
      scratch.set_discrete(i, x);
      out_c[x] = cond_->eval(scratch) - base;
    }
  }

  void commit(int i, int x, const double*) override { cur_.set_discrete(i, x); }

 private:
  const ColorCondition* cond_;
  ProbMatrix cur_;
};

}  // namespace

std::unique_ptr<ColorTermState> GenericIdsColorCondition::start(
    const ProbMatrix& p) const {
  return std::make_unique<GenericColorState>(*this, p);
}

// --------------------------------------------------------------------------
// Layered spanning-tree terms
// --------------------------------------------------------------------------

LayerCoverCondition::LayerCoverCondition(int n, int c,
                                         std::vector<std::vector<int>> neighbors)
    : n_(n), c_(c), neighbors_(std::move(neighbors)) {
  if (static_cast<int>(neighbors_.size()) != n) {
    throw std::invalid_argument("one neighbor list per node required");
  }
}

double LayerCoverCondition::eval(const ProbMatrix& p) const {
  double total = 0.0;
  for (int i = 0; i < n_; ++i) {
    // Violation probability: in some layer l > 0 with no neighbor below.
    double violated = 0.0;
    for (int l = 1; l < c_; ++l) {
      double none_below = 1.0;
      for (int v : neighbors_[static_cast<std::size_t>(i)]) {
        none_below *= 1.0 - p.at(v, l - 1);
        if (none_below == 0.0) break;
      }
      violated += p.at(i, l) * none_below;
    }
    total += violated;
  }
  return total;
}

LayerDistanceCondition::LayerDistanceCondition(int n, int c,
                                               std::vector<DistanceProfile> profiles)
    : n_(n), c_(c), profiles_(std::move(profiles)) {
  if (static_cast<int>(profiles_.size()) != n) {
    throw std::invalid_argument("one distance profile per node required");
  }
}

double LayerDistanceCondition::eval(const ProbMatrix& p) const {
  double total = 0.0;
  for (int i = 0; i < n_; ++i) {
    const auto& prof = profiles_[static_cast<std::size_t>(i)];
    for (int l = 1; l < c_; ++l) {
      const double pil = p.at(i, l);
      if (pil == 0.0) continue;
      total += pil * ms_eval_impl(prof, [&](int v) { return p.at(v, l - 1); });
    }
  }
  return total;
}

}  // namespace ucom2
