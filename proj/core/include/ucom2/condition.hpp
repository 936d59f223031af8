// Contracts for condition objectives: evaluation, incremental differences
// (IDs), and stateful derandomization support, plus the penalty composite
// that linearly combines condition terms with constraint coefficients.
//
// An incremental difference is Delta(i, x, p) = f(der(i, x; p)) - f(p),
// computed in closed form instead of re-evaluating the whole objective.
#pragma once

#include <memory>
#include <vector>

#include "ucom2/prob.hpp"

namespace ucom2 {

// Dense table of incremental differences: one row per node, one column per
// decision value (two columns in the binary case).
struct IdTable {
  int n = 0;
  int c = 2;
  std::vector<double> delta;

  IdTable() = default;
  IdTable(int n_, int c_)
      : n(n_), c(c_),
        delta(static_cast<std::size_t>(n_) * static_cast<std::size_t>(c_), 0.0) {}

  double& at(int i, int x) {
    return delta[static_cast<std::size_t>(i) * static_cast<std::size_t>(c) +
                 static_cast<std::size_t>(x)];
  }
  double at(int i, int x) const {
    return delta[static_cast<std::size_t>(i) * static_cast<std::size_t>(c) +
                 static_cast<std::size_t>(x)];
  }
  void fill(double v) { delta.assign(delta.size(), v); }
};

// Mutable companion of a condition term during derandomization. The engine
// owns the evolving probability state; a term state keeps whatever cached
// aggregates it needs (PMF, prefix products, neighbor sums) and refreshes
// them after each committed step.
class BinaryTermState {
 public:
  virtual ~BinaryTermState() = default;

  // Current objective value of this term.
  virtual double value() const = 0;

  // Writes Delta(i, 0) and Delta(i, 1) for every still-fractional i.
  // Entries of committed rows are left untouched.
  virtual void fill_ids(IdTable& out) const = 0;

  // IDs of a single fractional row (used by iterative rounding).
  virtual void row_ids(int i, double& d0, double& d1) const = 0;

  // Notifies the state that entry i was committed to x. The shared
  // probability state has already been updated when this is called;
  // old_pi carries the pre-commit value so cached aggregates that divide
  // out the old factor can be updated in O(affected) time.
  virtual void commit(int i, int x, double old_pi) = 0;
};

class ColorTermState {
 public:
  virtual ~ColorTermState() = default;
  virtual double value() const = 0;
  virtual void fill_ids(IdTable& out) const = 0;
  virtual void row_ids(int i, double* out_c) const = 0;
  virtual void commit(int i, int x, const double* old_row) = 0;
};

// One condition objective over binary decisions. Implementations are
// immutable once built; eval and ids are safe to call concurrently.
class BinaryCondition {
 public:
  virtual ~BinaryCondition() = default;

  virtual int size() const = 0;

  virtual double eval(const ProbVector& p) const = 0;

  // IDs for all fractional rows of p.
  virtual void ids(const ProbVector& p, IdTable& out) const = 0;

  // Starts a derandomization state bound to the given live state. The
  // referenced ProbVector must outlive the returned object and is updated
  // by the caller before each commit() call.
  virtual std::unique_ptr<BinaryTermState> start(const ProbVector& p) const = 0;
};

class ColorCondition {
 public:
  virtual ~ColorCondition() = default;
  virtual int size() const = 0;
  virtual int num_colors() const = 0;
  virtual double eval(const ProbMatrix& p) const = 0;
  virtual void ids(const ProbMatrix& p, IdTable& out) const = 0;
  virtual std::unique_ptr<ColorTermState> start(const ProbMatrix& p) const = 0;
};

// Weighted sum of condition terms: sum_t coeff_t * term_t. The objective
// terms keep coefficient 1; constraint terms carry the penalty coefficient.
class PenaltyComposite {
 public:
  struct Term {
    std::shared_ptr<const BinaryCondition> condition;
    double coeff = 1.0;
  };

  explicit PenaltyComposite(std::vector<Term> terms);

  int size() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  double eval(const ProbVector& p) const;
  void ids(const ProbVector& p, IdTable& out) const;

  class State {
   public:
    State(const PenaltyComposite& parent, const ProbVector& p);
    double value() const;
    void fill_ids(IdTable& out) const;
    void row_ids(int i, double& d0, double& d1) const;
    void commit(int i, int x, double old_pi);

   private:
    const PenaltyComposite* parent_;
    std::vector<std::unique_ptr<BinaryTermState>> states_;
    mutable IdTable scratch_;
  };

  std::unique_ptr<State> start(const ProbVector& p) const {
    return std::make_unique<State>(*this, p);
  }

 private:
  std::vector<Term> terms_;
  int n_ = 0;
};

class ColorPenaltyComposite {
 public:
  struct Term {
    std::shared_ptr<const ColorCondition> condition;
    double coeff = 1.0;
  };

  explicit ColorPenaltyComposite(std::vector<Term> terms);

  int size() const { return n_; }
  int num_colors() const { return c_; }
  const std::vector<Term>& terms() const { return terms_; }

  double eval(const ProbMatrix& p) const;
  void ids(const ProbMatrix& p, IdTable& out) const;

  class State {
   public:
    State(const ColorPenaltyComposite& parent, const ProbMatrix& p);
    double value() const;
    void fill_ids(IdTable& out) const;
    void row_ids(int i, double* out_c) const;
    void commit(int i, int x, const double* old_row);

   private:
    const ColorPenaltyComposite* parent_;
    std::vector<std::unique_ptr<ColorTermState>> states_;
    mutable IdTable scratch_;
    mutable std::vector<double> row_scratch_;
  };

  std::unique_ptr<State> start(const ProbMatrix& p) const {
    return std::make_unique<State>(*this, p);
  }

 private:
  std::vector<Term> terms_;
  int n_ = 0;
  int c_ = 0;
};

}  // namespace ucom2
