// Poisson binomial distribution of |V_X| = sum of independent Bernoullis:
// exact PMF via a discrete Fourier transform, a dynamic-programming
// convolution reference backend, leave-one-out recursions, and the
// cardinality-constraint objective built on top of them.
#pragma once

#include <memory>
#include <vector>

#include "ucom2/condition.hpp"
#include "ucom2/prob.hpp"

namespace ucom2 {

// PMF of |V_X| for X ~ p, together with the probabilities it came from.
struct PoiBinDistribution {
  std::vector<double> pmf;       // size n + 1
  std::vector<double> source_p;  // size n

  int n() const { return static_cast<int>(source_p.size()); }
};

enum class PmfMethod {
  kDft,  // direct O(n^2) discrete Fourier transform
  kDp,   // O(n^2) convolution; reference backend
};

// q_t = (1/(n+1)) sum_s exp(-i w s t) prod_j (1 - p_j + p_j exp(i w s)),
// w = 2 pi / (n+1). The imaginary residue is discarded; negative entries
// with magnitude <= 1e-8 are clamped to zero, larger ones raise an error.
PoiBinDistribution pmf_dft(const ProbVector& p);

// Convolution reference: starts from [1] and folds one Bernoulli at a time.
PoiBinDistribution pmf_dp(const ProbVector& p);

PoiBinDistribution pmf(const ProbVector& p, PmfMethod method);

// Distribution of |V_X \ {i}|: n entries for counts 0..n-1. Uses the
// forward leave-one-out recursion when p_i <= 0.5 and the backward one when
// p_i > 0.5. Requires a fractional p_i (exactly 0 or 1 violates the
// clamping contract).
std::vector<double> pmf_remove(const PoiBinDistribution& dist, int i);

// Feasible cardinality set C with dist[t] = min_{k in C} |t - k| for every
// count t in 0..n.
class CardinalitySet {
 public:
  // members: sorted set of feasible cardinalities, subset of {0..n}.
  CardinalitySet(std::vector<int> members, int n);

  static CardinalitySet exactly(int k, int n);
  static CardinalitySet at_most(int k, int n);
  static CardinalitySet full(int n);

  int n() const { return n_; }
  const std::vector<int>& members() const { return members_; }
  const std::vector<double>& distance() const { return distance_; }
  bool contains(int t) const;

 private:
  int n_ = 0;
  std::vector<int> members_;
  std::vector<double> distance_;  // size n + 1
};

// sum_t Pr[|V_X| = t] * min_{k in C} |t - k|.
double card_eval(const PoiBinDistribution& dist, const CardinalitySet& feasible);

// IDs of the cardinality objective, one pmf_remove per fractional node:
//   Delta(i, 0) = sum_t (q'_t   - q_t) dist[t]
//   Delta(i, 1) = sum_t (q'_{t-1} - q_t) dist[t]
void card_ids(const PoiBinDistribution& dist, const ProbVector& p,
              const CardinalitySet& feasible, IdTable& out);

// Cardinality constraint as a composable condition term. The derand state
// keeps the PMF cached and applies the reconstruction identity
// q_t = q'_t (1 - p_i) + q'_{t-1} p_i after each committed step.
class CardinalityCondition : public BinaryCondition {
 public:
  CardinalityCondition(CardinalitySet feasible, PmfMethod method = PmfMethod::kDft);

  int size() const override { return feasible_.n(); }
  double eval(const ProbVector& p) const override;
  void ids(const ProbVector& p, IdTable& out) const override;
  std::unique_ptr<BinaryTermState> start(const ProbVector& p) const override;

  const CardinalitySet& feasible() const { return feasible_; }

 private:
  CardinalitySet feasible_;
  PmfMethod method_;
};

}  // namespace ucom2
