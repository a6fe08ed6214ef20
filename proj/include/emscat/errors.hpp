#pragma once

#include <stdexcept>
#include <string>

namespace emscat {

// Input problems: malformed scenes, out-of-range parameters, violated
// modelling preconditions.  The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failures: ill-conditioned systems, divergent iterations, or
// residuals that do not meet the documented contract.  Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requests that no admissible configuration can satisfy, e.g. a refraction
// target outside the reachable set of the material model.  Exit code 4.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace emscat
