#pragma once

#include <stdexcept>
#include <string>

namespace ctforge {

/// Arithmetic outside the domain of an operation (division by zero,
/// negative q-binomial index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation of a rational function at one of its poles.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A value does not have the structural shape an operation requires.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A product that was expected to be a Laurent polynomial has a denominator.
class NotPolynomialError : public ShapeError {
 public:
  using ShapeError::ShapeError;
};

/// Partial fractions need pairwise distinct simple poles.
class DistinctPolesError : public ShapeError {
 public:
  using ShapeError::ShapeError;
};

/// Partial-fraction constant terms need a negative degree.
class ProperError : public ShapeError {
 public:
  ProperError(const std::string& what, long degree)
      : ShapeError(what), degree_(degree) {}
  long degree() const noexcept { return degree_; }

 private:
  long degree_;
};

/// A substitution sent a denominator factor to zero.
class UncancelledPoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when an invariant of the constant-term recursion fails. These are
/// bug detectors: a correct engine never throws them.
class ProofInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class CertificationError : public ProofInvariantError {
 public:
  using ProofInvariantError::ProofInvariantError;
};

class LemmaViolation : public ProofInvariantError {
 public:
  using ProofInvariantError::ProofInvariantError;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ctforge
