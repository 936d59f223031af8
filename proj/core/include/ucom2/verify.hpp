// Correctness suites behind the `verify` command: oracle equivalence,
// incremental-difference exactness, multilinearity, and the derandomization
// guarantees, runnable on bundled toys or a loaded instance. Also exposes
// the random-composite generators and error metrics the test suites build
// on.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucom2/condition.hpp"
#include "ucom2/data_io.hpp"
#include "ucom2/prob.hpp"

namespace ucom2 {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

bool all_passed(const std::vector<CheckResult>& checks);

// Random clamped states.
ProbVector random_prob_vector(int n, std::uint64_t seed, double eps = kDefaultEps);
ProbMatrix random_prob_matrix(int n, int c, std::uint64_t seed, double eps = kDefaultEps);

// Random mixed composites over the implemented condition terms; every term
// is an expectation objective, so the result is entry-wise concave.
PenaltyComposite random_binary_composite(int n, std::uint64_t seed);
ColorPenaltyComposite random_color_composite(int n, int c, std::uint64_t seed,
                                             bool include_layer_terms = false);

// Largest |Delta(i, x, p) - (f(der(i, x; p)) - f(p))| over fractional rows.
double max_ids_error(const PenaltyComposite& obj, const ProbVector& p);
double max_ids_error(const ColorPenaltyComposite& obj, const ProbMatrix& p);

// Largest |sum_x p_ix f(der(i, x; p)) - f(p)| over rows.
double max_multilinearity_error(const PenaltyComposite& obj, const ProbVector& p);
double max_multilinearity_error(const ColorPenaltyComposite& obj, const ProbMatrix& p);

// Smallest f(der(i, x; final)) - f(final) over all single-entry flips of a
// discrete state; >= -tol certifies the greedy local-minimum guarantee.
double best_flip_gain(const PenaltyComposite& obj, const DiscreteDecision& final);
double best_flip_gain(const ColorPenaltyComposite& obj, const DiscreteDecision& final);

struct VerifySuiteOptions {
  int seeds = 5;
  double tol = 1e-9;
  double pmf_tol = 1e-8;
};

// Full battery on built-in toy instances.
std::vector<CheckResult> verify_bundled(const VerifySuiteOptions& opts = {});

// Battery on one loaded instance; the enumeration oracle is skipped with a
// notice when the instance exceeds the enumeration guard.
std::vector<CheckResult> verify_instance(const Instance& inst,
                                         const VerifySuiteOptions& opts = {});

}  // namespace ucom2
