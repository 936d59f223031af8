// Error categories that the CLI maps onto distinct exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace ucom2 {

// File and format failures.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric breakdowns: NaN in incremental differences, PMF failures,
// diverged optimization.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ucom2
