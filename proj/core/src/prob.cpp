#include "ucom2/prob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ucom2 {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("clamp margin must lie in (0, 0.5), got " +
                                std::to_string(eps));
  }
}

void check_unit_interval(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("probability outside [0, 1]: " +
                                std::to_string(v));
  }
}

}  // namespace

void DiscreteDecision::validate() const {
  if (num_choices < 2) {
    throw std::invalid_argument("decision space needs at least two values");
  }
  for (int v : values) {
    if (v < 0 || v >= num_choices) {
      throw std::out_of_range("decision value out of range: " +
                              std::to_string(v));
    }
  }
}

ProbVector ProbVector::clamped(std::vector<double> raw, double eps) {
  check_eps(eps);
  if (raw.empty()) throw std::invalid_argument("empty probability vector");
  ProbVector p;
  p.eps_ = eps;
  for (double& v : raw) {
    check_unit_interval(v);
    v = std::min(1.0 - eps, std::max(eps, v));
  }
  p.entries_ = std::move(raw);
  return p;
}

ProbVector ProbVector::constant(int n, double value, double eps) {
  return clamped(std::vector<double>(static_cast<std::size_t>(n), value), eps);
}

ProbVector ProbVector::discrete(const DiscreteDecision& decision) {
  decision.validate();
  if (decision.num_choices != 2) {
    throw std::invalid_argument("binary state requires a binary decision");
  }
  ProbVector p;
  p.entries_.reserve(decision.values.size());
  for (int v : decision.values) p.entries_.push_back(v == 1 ? 1.0 : 0.0);
  return p;
}

bool ProbVector::fully_discrete() const {
  for (int i = 0; i < size(); ++i) {
    if (!is_discrete(i)) return false;
  }
  return true;
}

int ProbVector::num_fractional() const {
  int count = 0;
  for (int i = 0; i < size(); ++i) count += is_discrete(i) ? 0 : 1;
  return count;
}

void ProbVector::set_discrete(int i, int x) {
  if (i < 0 || i >= size()) throw std::out_of_range("node index out of range");
  if (x != 0 && x != 1) throw std::out_of_range("binary decision must be 0 or 1");
  entries_[static_cast<std::size_t>(i)] = x == 1 ? 1.0 : 0.0;
}

ProbVector ProbVector::derandomized(int i, int x) const {
  ProbVector out = *this;
  out.set_discrete(i, x);
  return out;
}

DiscreteDecision ProbVector::to_decision() const {
  if (!fully_discrete()) {
    throw std::logic_error("state still has fractional entries");
  }
  DiscreteDecision d;
  d.num_choices = 2;
  d.values.reserve(entries_.size());
  for (double v : entries_) d.values.push_back(v == 1.0 ? 1 : 0);
  return d;
}

ProbMatrix ProbMatrix::clamped(int n, int c, std::vector<double> raw,
                               double eps) {
  check_eps(eps);
  if (n < 1) throw std::invalid_argument("need at least one row");
  if (c < 2) throw std::invalid_argument("need at least two decision values");
  if (raw.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(c)) {
    throw std::invalid_argument("row-major data size mismatch");
  }
  ProbMatrix p;
  p.n_ = n;
  p.c_ = c;
  p.eps_ = eps;
  for (int i = 0; i < n; ++i) {
    double* row = raw.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c);
    double sum = 0.0;
    for (int r = 0; r < c; ++r) {
      check_unit_interval(row[r]);
      row[r] = std::min(1.0 - eps, std::max(eps, row[r]));
      sum += row[r];
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      throw std::invalid_argument("degenerate row in probability matrix");
    }
    for (int r = 0; r < c; ++r) row[r] /= sum;
  }
  p.data_ = std::move(raw);
  return p;
}

ProbMatrix ProbMatrix::uniform(int n, int c, double eps) {
  return clamped(n, c,
                 std::vector<double>(
                     static_cast<std::size_t>(n) * static_cast<std::size_t>(c),
                     1.0 / static_cast<double>(c)),
                 eps);
}

ProbMatrix ProbMatrix::discrete(const DiscreteDecision& decision) {
  decision.validate();
  ProbMatrix p;
  p.n_ = decision.size();
  p.c_ = decision.num_choices;
  p.data_.assign(
      static_cast<std::size_t>(p.n_) * static_cast<std::size_t>(p.c_), 0.0);
  for (int i = 0; i < p.n_; ++i) {
    p.data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(p.c_) +
            static_cast<std::size_t>(decision.values[static_cast<std::size_t>(i)])] = 1.0;
  }
  return p;
}

bool ProbMatrix::row_discrete(int i) const {
  const double* r = row(i);
  for (int x = 0; x < c_; ++x) {
    if (r[x] != 0.0 && r[x] != 1.0) return false;
  }
  return true;
}

bool ProbMatrix::fully_discrete() const {
  for (int i = 0; i < n_; ++i) {
    if (!row_discrete(i)) return false;
  }
  return true;
}

int ProbMatrix::num_fractional() const {
  int count = 0;
  for (int i = 0; i < n_; ++i) count += row_discrete(i) ? 0 : 1;
  return count;
}

void ProbMatrix::set_discrete(int i, int x) {
  if (i < 0 || i >= n_) throw std::out_of_range("node index out of range");
  if (x < 0 || x >= c_) throw std::out_of_range("decision value out of range");
  double* r = data_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(c_);
  for (int y = 0; y < c_; ++y) r[y] = y == x ? 1.0 : 0.0;
}

ProbMatrix ProbMatrix::derandomized(int i, int x) const {
  ProbMatrix out = *this;
  out.set_discrete(i, x);
  return out;
}

DiscreteDecision ProbMatrix::to_decision() const {
  if (!fully_discrete()) {
    throw std::logic_error("state still has fractional rows");
  }
  DiscreteDecision d;
  d.num_choices = c_;
  d.values.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    const double* r = row(i);
    int chosen = 0;
    for (int x = 0; x < c_; ++x) {
      if (r[x] == 1.0) chosen = x;
    }
    d.values.push_back(chosen);
  }
  return d;
}

ProbVector derandomize_entry(const ProbVector& p, int i, int x) {
  return p.derandomized(i, x);
}

ProbMatrix derandomize_entry(const ProbMatrix& p, int i, int x) {
  return p.derandomized(i, x);
}

ProbVector clamp(std::vector<double> raw, double eps) {
  return ProbVector::clamped(std::move(raw), eps);
}

ProbMatrix clamp(int n, int c, std::vector<double> raw, double eps) {
  return ProbMatrix::clamped(n, c, std::move(raw), eps);
}

}  // namespace ucom2
