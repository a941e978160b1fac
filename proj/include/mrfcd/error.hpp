#pragma once

#include <stdexcept>
#include <string>

namespace mrfcd {

// Precondition or input-validation failure. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact enumeration would exceed the configured state-space cap.
class CapExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A closed-form bound was requested outside the region where it holds.
class BoundNotApplicable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Symmetric factorization failed (pivot <= tolerance).
class NotPositiveDefinite : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

}  // namespace mrfcd
