#pragma once

#include <stdexcept>
#include <string>

namespace kinrelax {

/// Invalid user input: bad parameters, malformed config, unsupported options.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-physical state (rho <= 0, P <= 0, T <= 0) met during evaluation.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver failure: singular local systems, blow-up, non-convergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kinrelax
