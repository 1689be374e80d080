#pragma once

#include <stdexcept>
#include <string>

namespace luinv {

/// Precondition violated by the caller (weight mismatch, bad shape, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (spec strings, graph ids, JSON files).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is only defined for bosonic/fermionic particle types.
class UnsupportedSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A k-tuple of matrices that does not satisfy the line-sum constraints.
class InvalidGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dimension sequence that is not the Hilbert series of a free algebra.
class NotFreeProfileError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured resource cap would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace luinv
