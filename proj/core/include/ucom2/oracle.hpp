// Brute-force expectation by full enumeration of the decision space.
// Anchors every closed-form objective in the test and verify suites.
#pragma once

#include <functional>

#include "ucom2/prob.hpp"

namespace ucom2 {

// Largest enumeration allowed: 2^20 outcomes.
inline constexpr long long kOracleMaxOutcomes = 1LL << 20;

// E_{X~p} g(X) over all 2^n binary outcomes, weighted by the product of the
// independent Bernoulli marginals. Throws if n > 20.
double oracle_expectation(const std::function<double(const DiscreteDecision&)>& g,
                          const ProbVector& p);

// Non-binary version over all c^n outcomes. Throws if c^n > 2^20.
double oracle_expectation(const std::function<double(const DiscreteDecision&)>& g,
                          const ProbMatrix& p);

}  // namespace ucom2
