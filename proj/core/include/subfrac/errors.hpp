#pragma once

#include <stdexcept>
#include <string>

namespace subfrac {

/// Bad or inconsistent user-facing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: quadrature did not converge, series diverged,
/// linear solve broke down (CLI exit code 3).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subfrac
