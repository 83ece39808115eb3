#pragma once

#include <stdexcept>
#include <string>

namespace altpd {

// Raised when a computation hits a mathematical degeneracy: a reducible
// chain with several stationary distributions, a vanishing determinant or
// field denominator, a point on a degenerate torus. Precondition violations
// use std::invalid_argument instead.
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace altpd
