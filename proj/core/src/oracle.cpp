#include "ucom2/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace ucom2 {

double oracle_expectation(const std::function<double(const DiscreteDecision&)>& g,
                          const ProbVector& p) {
  const int n = p.size();
  if (n > 20) {
    throw std::invalid_argument("binary enumeration limited to n <= 20");
  }
  DiscreteDecision x;
  x.num_choices = 2;
  x.values.assign(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  const long long outcomes = 1LL << n;
  for (long long mask = 0; mask < outcomes; ++mask) {
    double weight = 1.0;
    for (int i = 0; i < n; ++i) {
      const bool on = (mask >> i) & 1;
      x.values[static_cast<std::size_t>(i)] = on ? 1 : 0;
      weight *= on ? p[i] : 1.0 - p[i];
    }
    if (weight != 0.0) total += weight * g(x);
  }
  return total;
}

double oracle_expectation(const std::function<double(const DiscreteDecision&)>& g,
                          const ProbMatrix& p) {
  const int n = p.rows();
  const int c = p.cols();
  double outcomes = 1.0;
  for (int i = 0; i < n; ++i) {
    outcomes *= static_cast<double>(c);
    if (outcomes > static_cast<double>(kOracleMaxOutcomes)) {
      throw std::invalid_argument("enumeration limited to c^n <= 2^20");
    }
  }
  DiscreteDecision x;
  x.num_choices = c;
  x.values.assign(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  // Odometer enumeration of d^n.
  while (true) {
    double weight = 1.0;
    for (int i = 0; i < n; ++i) {
      weight *= p.at(i, x.values[static_cast<std::size_t>(i)]);
    }
    if (weight != 0.0) total += weight * g(x);
    int pos = 0;
    while (pos < n) {
      auto& digit = x.values[static_cast<std::size_t>(pos)];
      if (++digit < c) break;
      digit = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return total;
}

}  // namespace ucom2
