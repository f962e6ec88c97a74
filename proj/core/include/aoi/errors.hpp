#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace aoi {

// Raised when a configuration violates one of its invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by mean-value queueing operations when lambda * service is not
// strictly below one.
class UnstableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when an optimization problem has an empty feasible set. The
// binding constraint name is kept separately for diagnostics.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string constraint, const std::string& what)
      : std::runtime_error(what), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace aoi
