#include "ucom2/poibin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ucom2/errors.hpp"
#include "ucom2/parallel.hpp"

namespace ucom2 {

namespace {

constexpr double kNegativeTolerance = 1e-8;

void sanitize_pmf(std::vector<double>& q) {
  for (double& v : q) {
    if (v < 0.0) {
      if (v < -kNegativeTolerance) {
        throw NumericError("Poisson binomial PMF came out negative: " +
                           std::to_string(v));
      }
      v = 0.0;
    }
  }
}

bool entry_fractional(double v) { return v != 0.0 && v != 1.0; }

}  // namespace

PoiBinDistribution pmf_dft(const ProbVector& p) {
  const int n = p.size();
  const int m = n + 1;
  const double omega = 2.0 * std::numbers::pi / static_cast<double>(m);

  // z_s = prod_j (1 - p_j + p_j e^{i w s}); conjugate symmetry
  // z_{m-s} = conj(z_s) halves the product work.
  std::vector<std::complex<double>> z(static_cast<std::size_t>(m));
  z[0] = {1.0, 0.0};
  const int half = m / 2;
  parallel_for(1, half + 1, [&](int s) {
    const std::complex<double> root(std::cos(omega * s), std::sin(omega * s));
    std::complex<double> prod(1.0, 0.0);
    for (int j = 0; j < n; ++j) {
      prod *= std::complex<double>(1.0 - p[j]) + p[j] * root;
    }
    z[static_cast<std::size_t>(s)] = prod;
    if (s != m - s) z[static_cast<std::size_t>(m - s)] = std::conj(prod);
  });

  PoiBinDistribution dist;
  dist.source_p = p.entries();
  dist.pmf.assign(static_cast<std::size_t>(m), 0.0);
  parallel_for(0, m, [&](int t) {
    std::complex<double> acc(0.0, 0.0);
    for (int s = 0; s < m; ++s) {
      const double angle = -omega * static_cast<double>(s) * static_cast<double>(t);
      acc += std::complex<double>(std::cos(angle), std::sin(angle)) *
             z[static_cast<std::size_t>(s)];
    }
    dist.pmf[static_cast<std::size_t>(t)] = acc.real() / static_cast<double>(m);
  });
  sanitize_pmf(dist.pmf);
  return dist;
}

PoiBinDistribution pmf_dp(const ProbVector& p) {
  const int n = p.size();
  PoiBinDistribution dist;
  dist.source_p = p.entries();
  dist.pmf.assign(static_cast<std::size_t>(n) + 1, 0.0);
  dist.pmf[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    const double pj = p[j];
    for (int t = j + 1; t >= 1; --t) {
      dist.pmf[static_cast<std::size_t>(t)] =
          dist.pmf[static_cast<std::size_t>(t)] * (1.0 - pj) +
          dist.pmf[static_cast<std::size_t>(t) - 1] * pj;
    }
    dist.pmf[0] *= 1.0 - pj;
  }
  return dist;
}

PoiBinDistribution pmf(const ProbVector& p, PmfMethod method) {
  return method == PmfMethod::kDft ? pmf_dft(p) : pmf_dp(p);
}

namespace {

// Shared by pmf_remove and the cardinality derand state, which must remove
// nodes whose live entry has already been overwritten.
std::vector<double> remove_from_pmf(const std::vector<double>& q, double pi) {
  const int n = static_cast<int>(q.size()) - 1;
  if (!entry_fractional(pi)) {
    throw std::invalid_argument(
        "leave-one-out recursion needs a fractional entry (clamping contract)");
  }
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (pi <= 0.5) {
    // Forward recursion, stable for small p_i.
    const double denom = 1.0 - pi;
    out[0] = q[0] / denom;
    for (int t = 1; t < n; ++t) {
      out[static_cast<std::size_t>(t)] =
          (q[static_cast<std::size_t>(t)] - pi * out[static_cast<std::size_t>(t) - 1]) /
          denom;
    }
  } else {
    // Backward recursion, stable for large p_i.
    out[static_cast<std::size_t>(n) - 1] = q[static_cast<std::size_t>(n)] / pi;
    for (int t = n - 1; t >= 1; --t) {
      out[static_cast<std::size_t>(t) - 1] =
          (q[static_cast<std::size_t>(t)] -
           (1.0 - pi) * out[static_cast<std::size_t>(t)]) /
          pi;
    }
  }
  return out;
}

}  // namespace

std::vector<double> pmf_remove(const PoiBinDistribution& dist, int i) {
  const int n = dist.n();
  if (i < 0 || i >= n) throw std::out_of_range("node index out of range");
  return remove_from_pmf(dist.pmf, dist.source_p[static_cast<std::size_t>(i)]);
}

CardinalitySet::CardinalitySet(std::vector<int> members, int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative decision count");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) {
    throw std::invalid_argument("feasible cardinality set must be non-empty");
  }
  if (members.front() < 0 || members.back() > n) {
    throw std::out_of_range("feasible cardinality outside 0..n");
  }
  members_ = std::move(members);

  // Two-pointer sweep: nearest feasible member for every count t.
  distance_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  std::size_t cursor = 0;
  for (int t = 0; t <= n; ++t) {
    while (cursor + 1 < members_.size() &&
           std::abs(members_[cursor + 1] - t) <= std::abs(members_[cursor] - t)) {
      ++cursor;
    }
    distance_[static_cast<std::size_t>(t)] =
        static_cast<double>(std::abs(members_[cursor] - t));
  }
}

CardinalitySet CardinalitySet::exactly(int k, int n) {
  return CardinalitySet({k}, n);
}

CardinalitySet CardinalitySet::at_most(int k, int n) {
  std::vector<int> members;
  for (int t = 0; t <= k; ++t) members.push_back(t);
  return CardinalitySet(std::move(members), n);
}

CardinalitySet CardinalitySet::full(int n) { return at_most(n, n); }

bool CardinalitySet::contains(int t) const {
  return std::binary_search(members_.begin(), members_.end(), t);
}

double card_eval(const PoiBinDistribution& dist, const CardinalitySet& feasible) {
  if (dist.n() != feasible.n()) {
    throw std::invalid_argument("PMF and cardinality set disagree on n");
  }
  const auto& d = feasible.distance();
  double total = 0.0;
  for (std::size_t t = 0; t < dist.pmf.size(); ++t) total += dist.pmf[t] * d[t];
  return total;
}

namespace {

void card_ids_one(const std::vector<double>& q, const std::vector<double>& d,
                  double pi, double& delta0, double& delta1) {
  const std::vector<double> removed = remove_from_pmf(q, pi);
  const int n = static_cast<int>(q.size()) - 1;
  double d0 = 0.0, d1 = 0.0;
  for (int t = 0; t <= n; ++t) {
    const double qt = q[static_cast<std::size_t>(t)];
    const double r_t = t < n ? removed[static_cast<std::size_t>(t)] : 0.0;
    const double r_tm1 = t > 0 ? removed[static_cast<std::size_t>(t) - 1] : 0.0;
    d0 += (r_t - qt) * d[static_cast<std::size_t>(t)];
    d1 += (r_tm1 - qt) * d[static_cast<std::size_t>(t)];
  }
  delta0 = d0;
  delta1 = d1;
}

}  // namespace

void card_ids(const PoiBinDistribution& dist, const ProbVector& p,
              const CardinalitySet& feasible, IdTable& out) {
  const int n = dist.n();
  if (p.size() != n || feasible.n() != n) {
    throw std::invalid_argument("size mismatch in cardinality IDs");
  }
  const auto& d = feasible.distance();
  parallel_for(0, n, [&](int i) {
    if (p.is_discrete(i)) return;
    card_ids_one(dist.pmf, d, p[i], out.at(i, 0), out.at(i, 1));
  });
}

namespace {

class CardinalityState final : public BinaryTermState {
 public:
  CardinalityState(const CardinalitySet& feasible, PmfMethod method,
                   const ProbVector& p)
      : feasible_(&feasible), dist_(pmf(p, method)) {}

  double value() const override { return card_eval(dist_, *feasible_); }

  void fill_ids(IdTable& out) const override {
    const auto& d = feasible_->distance();
    parallel_for(0, dist_.n(), [&](int i) {
      const double pi = dist_.source_p[static_cast<std::size_t>(i)];
      if (!entry_fractional(pi)) return;
      card_ids_one(dist_.pmf, d, pi, out.at(i, 0), out.at(i, 1));
    });
  }

  void row_ids(int i, double& d0, double& d1) const override {
    card_ids_one(dist_.pmf, feasible_->distance(),
                 dist_.source_p[static_cast<std::size_t>(i)], d0, d1);
  }

  void commit(int i, int x, double old_pi) override {
    // Reconstruction identity: the committed PMF is the leave-one-out PMF
    // shifted by the committed value.
    const std::vector<double> removed = remove_from_pmf(dist_.pmf, old_pi);
    const int n = dist_.n();
    if (x == 0) {
      for (int t = 0; t < n; ++t) {
        dist_.pmf[static_cast<std::size_t>(t)] = removed[static_cast<std::size_t>(t)];
      }
      dist_.pmf[static_cast<std::size_t>(n)] = 0.0;
    } else {
      for (int t = n; t >= 1; --t) {
        dist_.pmf[static_cast<std::size_t>(t)] = removed[static_cast<std::size_t>(t) - 1];
      }
      dist_.pmf[0] = 0.0;
    }
    for (double& v : dist_.pmf) v = std::max(v, 0.0);
    dist_.source_p[static_cast<std::size_t>(i)] = x == 1 ? 1.0 : 0.0;
  }

 private:
  const CardinalitySet* feasible_;
  PoiBinDistribution dist_;
};

}  // namespace

CardinalityCondition::CardinalityCondition(CardinalitySet feasible,
                                           PmfMethod method)
    : feasible_(std::move(feasible)), method_(method) {}

double CardinalityCondition::eval(const ProbVector& p) const {
  if (p.size() != feasible_.n()) throw std::invalid_argument("size mismatch");
  return card_eval(pmf(p, method_), feasible_);
}

void CardinalityCondition::ids(const ProbVector& p, IdTable& out) const {
  card_ids(pmf(p, method_), p, feasible_, out);
}

std::unique_ptr<BinaryTermState> CardinalityCondition::start(
    const ProbVector& p) const {
  if (p.size() != feasible_.n()) throw std::invalid_argument("size mismatch");
  return std::make_unique<CardinalityState>(feasible_, method_, p);
}

}  // namespace ucom2
