#pragma once

#include <stdexcept>
#include <string>

namespace harmonic {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (non-prime N, bad d, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An element that should be a unit of Z_N is congruent to 0.
class InvalidUnitError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Operands live over different moduli or dimensions.
class MismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A computation would exceed its configured brute-force budget.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, std::string required)
      : Error(what), required_(std::move(required)) {}

  /// Decimal size of the work that was refused (e.g. C(N,d)).
  const std::string& required() const noexcept { return required_; }

 private:
  std::string required_;
};

/// An internal identity that the mathematics guarantees did not hold.
/// Seeing one of these means there is a bug.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace harmonic
