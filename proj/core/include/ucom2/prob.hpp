// Decision-state types: Bernoulli probability vectors for binary decisions,
// row-stochastic matrices for non-binary ones, and discrete decisions.
//
// Fractional entries always live in [eps, 1-eps]; exact 0/1 entries appear
// only as outputs of local derandomization. The clamp margin keeps the
// leave-one-out recursions and the ratio terms in the incremental
// differences well defined.
#pragma once

#include <cstdint>
#include <vector>

namespace ucom2 {

inline constexpr double kDefaultEps = 1e-6;

// A full discrete decision: one value in {0, ..., num_choices-1} per node.
struct DiscreteDecision {
  std::vector<int> values;
  int num_choices = 2;

  int size() const { return static_cast<int>(values.size()); }
  void validate() const;
  bool operator==(const DiscreteDecision&) const = default;
};

class ProbVector {
 public:
  ProbVector() = default;

  // Clamps raw probabilities (entries must be in [0, 1]) into [eps, 1-eps].
  // Idempotent: clamping an already-clamped vector changes nothing.
  static ProbVector clamped(std::vector<double> raw, double eps = kDefaultEps);

  static ProbVector constant(int n, double value, double eps = kDefaultEps);

  // A fully discrete state (used as the endpoint of derandomization).
  static ProbVector discrete(const DiscreteDecision& decision);

  int size() const { return static_cast<int>(entries_.size()); }
  double eps() const { return eps_; }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }

  bool is_discrete(int i) const {
    const double v = entries_[static_cast<std::size_t>(i)];
    return v == 0.0 || v == 1.0;
  }
  bool fully_discrete() const;
  int num_fractional() const;

  // Commits entry i to x in {0, 1}. In-place counterpart of derandomized().
  void set_discrete(int i, int x);

  // Scratch mutator for polynomial evaluation (finite differences, generic
  // IDs); deliberately bypasses the clamp invariant.
  void set_raw(int i, double v) { entries_[static_cast<std::size_t>(i)] = v; }

  // Local derandomization der(i, x; p): entry i becomes x, others unchanged.
  ProbVector derandomized(int i, int x) const;

  // Requires a fully discrete state.
  DiscreteDecision to_decision() const;

 private:
  std::vector<double> entries_;
  double eps_ = kDefaultEps;
};

class ProbMatrix {
 public:
  ProbMatrix() = default;

  // Clamps each raw entry into [eps, 1-eps], then renormalizes every row to
  // sum to one. Rows of the input must consist of entries in [0, 1].
  static ProbMatrix clamped(int n, int c, std::vector<double> raw,
                            double eps = kDefaultEps);

  static ProbMatrix uniform(int n, int c, double eps = kDefaultEps);

  static ProbMatrix discrete(const DiscreteDecision& decision);

  int rows() const { return n_; }
  int cols() const { return c_; }
  double eps() const { return eps_; }
  double at(int i, int r) const {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(c_) +
                 static_cast<std::size_t>(r)];
  }
  const double* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c_);
  }
  const std::vector<double>& data() const { return data_; }

  bool row_discrete(int i) const;
  bool fully_discrete() const;
  int num_fractional() const;

  // Commits row i to the one-hot of x.
  void set_discrete(int i, int x);

  // Scratch mutators for polynomial evaluation off the simplex.
  void set_raw(int i, int r, double v) {
    data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(c_) +
          static_cast<std::size_t>(r)] = v;
  }
  void set_row_raw(int i, const double* vals) {
    for (int r = 0; r < c_; ++r) set_raw(i, r, vals[r]);
  }

  // Local derandomization der(i, x; p): row i becomes one-hot x.
  ProbMatrix derandomized(int i, int x) const;

  DiscreteDecision to_decision() const;

 private:
  int n_ = 0;
  int c_ = 0;
  std::vector<double> data_;
  double eps_ = kDefaultEps;
};

// Free-function forms of local derandomization.
ProbVector derandomize_entry(const ProbVector& p, int i, int x);
ProbMatrix derandomize_entry(const ProbMatrix& p, int i, int x);

// Free-function forms of clamping.
ProbVector clamp(std::vector<double> raw, double eps = kDefaultEps);
ProbMatrix clamp(int n, int c, std::vector<double> raw, double eps = kDefaultEps);

}  // namespace ucom2
