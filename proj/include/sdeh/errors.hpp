#pragma once

#include <stdexcept>
#include <string>

namespace sdeh {

// A point lies outside the chart domain, or an elementary function was
// evaluated outside its domain (division by zero, log of a non-positive...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation does not apply to the given data (wrong chart, degenerate
// spectrum, vanishing W+...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdeh
