#pragma once

#include <stdexcept>
#include <string>

namespace lps {

/// Operand shapes do not agree (e.g. commutator of a 3x3 with a 4x4).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition or class-tag requirement was violated.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Serialized input does not match its schema.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Floating point breakdown: NaN/Inf produced, overflow, or a solver that
/// did not converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lps
