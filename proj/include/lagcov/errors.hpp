#pragma once

#include <stdexcept>
#include <string>

namespace lagcov {

// Argument outside the mathematical domain of an operation (k <= 0, y <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Characteristic sequence cannot be matched into non-crossing pairs.
class SequenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnbalancedSequenceError : public SequenceError {
 public:
  using SequenceError::SequenceError;
};

class PrefixViolationError : public SequenceError {
 public:
  using SequenceError::SequenceError;
};

class CutoffExceededError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class TableTooSmallError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Failures of the analytic law evaluation (root selection, quadrature).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootSelectionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EigensolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lagcov
