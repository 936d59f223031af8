#include "ucom2/condition.hpp"

#include <cmath>
#include <stdexcept>

namespace ucom2 {

namespace {

template <class Term>
int checked_size(const std::vector<Term>& terms) {
  if (terms.empty()) {
    throw std::invalid_argument("penalty composite needs at least one term");
  }
  const int n = terms.front().condition->size();
  for (const auto& t : terms) {
    if (!t.condition) throw std::invalid_argument("null condition term");
    if (t.condition->size() != n) {
      throw std::invalid_argument("condition terms disagree on decision size");
    }
    if (!(t.coeff >= 0.0) || !std::isfinite(t.coeff)) {
      throw std::invalid_argument("penalty coefficients must be finite and >= 0");
    }
  }
  return n;
}

}  // namespace

PenaltyComposite::PenaltyComposite(std::vector<Term> terms)
    : terms_(std::move(terms)) {
  n_ = checked_size(terms_);
}

double PenaltyComposite::eval(const ProbVector& p) const {
  if (p.size() != n_) throw std::invalid_argument("state size mismatch");
  double total = 0.0;
  for (const auto& t : terms_) total += t.coeff * t.condition->eval(p);
  return total;
}

void PenaltyComposite::ids(const ProbVector& p, IdTable& out) const {
  if (p.size() != n_) throw std::invalid_argument("state size mismatch");
  out = IdTable(n_, 2);
  IdTable scratch(n_, 2);
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    scratch.fill(0.0);
    t.condition->ids(p, scratch);
    for (std::size_t k = 0; k < out.delta.size(); ++k) {
      out.delta[k] += t.coeff * scratch.delta[k];
    }
  }
}

PenaltyComposite::State::State(const PenaltyComposite& parent,
                               const ProbVector& p)
    : parent_(&parent), scratch_(parent.size(), 2) {
  if (p.size() != parent.size()) {
    throw std::invalid_argument("state size mismatch");
  }
  states_.reserve(parent.terms().size());
  for (const auto& t : parent.terms()) states_.push_back(t.condition->start(p));
}

double PenaltyComposite::State::value() const {
  double total = 0.0;
  for (std::size_t t = 0; t < states_.size(); ++t) {
    total += parent_->terms()[t].coeff * states_[t]->value();
  }
  return total;
}

void PenaltyComposite::State::fill_ids(IdTable& out) const {
  out = IdTable(parent_->size(), 2);
  for (std::size_t t = 0; t < states_.size(); ++t) {
    const double coeff = parent_->terms()[t].coeff;
    if (coeff == 0.0) continue;
    scratch_.fill(0.0);
    states_[t]->fill_ids(scratch_);
    for (std::size_t k = 0; k < out.delta.size(); ++k) {
      out.delta[k] += coeff * scratch_.delta[k];
    }
  }
}

void PenaltyComposite::State::row_ids(int i, double& d0, double& d1) const {
  d0 = 0.0;
  d1 = 0.0;
  for (std::size_t t = 0; t < states_.size(); ++t) {
    const double coeff = parent_->terms()[t].coeff;
    if (coeff == 0.0) continue;
    double a = 0.0, b = 0.0;
    states_[t]->row_ids(i, a, b);
    d0 += coeff * a;
    d1 += coeff * b;
  }
}

void PenaltyComposite::State::commit(int i, int x, double old_pi) {
  for (auto& s : states_) s->commit(i, x, old_pi);
}

ColorPenaltyComposite::ColorPenaltyComposite(std::vector<Term> terms)
    : terms_(std::move(terms)) {
  n_ = checked_size(terms_);
  c_ = terms_.front().condition->num_colors();
  for (const auto& t : terms_) {
    if (t.condition->num_colors() != c_) {
      throw std::invalid_argument("condition terms disagree on color count");
    }
  }
}

double ColorPenaltyComposite::eval(const ProbMatrix& p) const {
  if (p.rows() != n_ || p.cols() != c_) {
    throw std::invalid_argument("state shape mismatch");
  }
  double total = 0.0;
  for (const auto& t : terms_) total += t.coeff * t.condition->eval(p);
  return total;
}

void ColorPenaltyComposite::ids(const ProbMatrix& p, IdTable& out) const {
  if (p.rows() != n_ || p.cols() != c_) {
    throw std::invalid_argument("state shape mismatch");
  }
  out = IdTable(n_, c_);
  IdTable scratch(n_, c_);
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    scratch.fill(0.0);
    t.condition->ids(p, scratch);
    for (std::size_t k = 0; k < out.delta.size(); ++k) {
      out.delta[k] += t.coeff * scratch.delta[k];
    }
  }
}

ColorPenaltyComposite::State::State(const ColorPenaltyComposite& parent,
                                    const ProbMatrix& p)
    : parent_(&parent),
      scratch_(parent.size(), parent.num_colors()),
      row_scratch_(static_cast<std::size_t>(parent.num_colors()), 0.0) {
  if (p.rows() != parent.size() || p.cols() != parent.num_colors()) {
    throw std::invalid_argument("state shape mismatch");
  }
  states_.reserve(parent.terms().size());
  for (const auto& t : parent.terms()) states_.push_back(t.condition->start(p));
}

double ColorPenaltyComposite::State::value() const {
  double total = 0.0;
  for (std::size_t t = 0; t < states_.size(); ++t) {
    total += parent_->terms()[t].coeff * states_[t]->value();
  }
  return total;
}

void ColorPenaltyComposite::State::fill_ids(IdTable& out) const {
  out = IdTable(parent_->size(), parent_->num_colors());
  for (std::size_t t = 0; t < states_.size(); ++t) {
    const double coeff = parent_->terms()[t].coeff;
    if (coeff == 0.0) continue;
    scratch_.fill(0.0);
    states_[t]->fill_ids(scratch_);
    for (std::size_t k = 0; k < out.delta.size(); ++k) {
      out.delta[k] += coeff * scratch_.delta[k];
    }
  }
}

void ColorPenaltyComposite::State::row_ids(int i, double* out_c) const {
  const int c = parent_->num_colors();
  for (int x = 0; x < c; ++x) out_c[x] = 0.0;
  for (std::size_t t = 0; t < states_.size(); ++t) {
    const double coeff = parent_->terms()[t].coeff;
    if (coeff == 0.0) continue;
    states_[t]->row_ids(i, row_scratch_.data());
    for (int x = 0; x < c; ++x) out_c[x] += coeff * row_scratch_[static_cast<std::size_t>(x)];
  }
}

void ColorPenaltyComposite::State::commit(int i, int x, const double* old_row) {
  for (auto& s : states_) s->commit(i, x, old_row);
}

}  // namespace ucom2
