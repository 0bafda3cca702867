// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace hardycone {

// Bad call arguments (x <= 0, n < 2, empty tables, ...).
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An integrability / finiteness hypothesis of a characterization does not
// hold for the given weights.  what() names the violated condition.
class condition_failed : public std::runtime_error {
 public:
  explicit condition_failed(const std::string& cond)
      : std::runtime_error("condition failed: " + cond), condition_(cond) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

// Requested transform/operation is outside the supported weight family.
class unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardycone
