#pragma once

#include <stdexcept>
#include <string>

namespace sdmt {

// Invalid user-facing configuration (bad scenario file, bad flag values).
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the regime the analysis supports (e.g. rank > N_c).
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Monte Carlo estimate could not resolve the rare event at the requested
// sample size.  The CLI maps this to exit code 3.
class RareEventError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative matrix decomposition failed to converge.
class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdmt
