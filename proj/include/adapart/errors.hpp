#pragma once

#include <stdexcept>
#include <string>

namespace adapart {

// Bad user-facing configuration (flags, files, specs). CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A combinatorial budget would be exceeded; refused up front. CLI exit code 3.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime (negative oracle value, degenerate spectrum,
// rejection sampling stall, ...). CLI exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adapart
