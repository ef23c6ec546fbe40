#pragma once

#include <stdexcept>
#include <string>

namespace stieltjes {

/// Violated precondition or malformed input. CLI maps this to exit code 2.
class validation_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation failed to converge or produced inconsistent results.
/// CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stieltjes
