#pragma once

#include <stdexcept>
#include <string>

namespace fracdn {

// Base of every exception the library throws; messages name the violated
// precondition or invariant.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Gamma evaluated at zero or a negative integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Result above the largest representable double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Constructor or configuration input violating a stated invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Series stopping rule did not fire within the term budget.
class TruncationFailure : public Error {
 public:
  using Error::Error;
};

// The closed-form power rule was asked for an exponent below its validity
// strip; the composition path must be used instead.
class UnsupportedDomain : public Error {
 public:
  using Error::Error;
};

// Index outside a sequence-dependent range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Quadrature refinement levels disagreed beyond tolerance.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fracdn
