#pragma once

#include <stdexcept>
#include <string>

namespace conedyn {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or preconditions (dimension mismatch, invalid point, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input the operation does not support (e.g. a non-polyhedral cone where
// facets are required).
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Integration produced a non-finite state, left the manifold, or an iterative
// solver failed to converge.
class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& what, double time = 0.0)
      : Error(what), time_(time) {}

  // Integration time at which the failure was detected.
  double time() const { return time_; }

 private:
  double time_;
};

// A propagated cone ray left the cone field.
class DpViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace conedyn
