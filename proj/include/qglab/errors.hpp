#pragma once

#include <stdexcept>
#include <string>

namespace qglab {

// Invalid user input: configuration fields, files, infeasible parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to meet its contract (non-convergence,
// unresolved scan, retry budget exhausted).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qglab
