#pragma once

#include <stdexcept>
#include <string>

namespace espo {

// Base of every error raised by the library. The CLI maps ValidationError
// (and subclasses) to exit code 2 and BudgetError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EncodingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GenericityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class StrategyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InsufficientDataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PullbackError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Raised when an input fails an axiom a later operation depends on.
class AxiomError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Precondition failures that carry a human-readable witness.
class PreconditionError : public ValidationError {
 public:
  PreconditionError(const std::string& what, std::string witness)
      : ValidationError(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

class IoError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace espo
