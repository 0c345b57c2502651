#pragma once

#include <stdexcept>
#include <string>

namespace critgroup {

/// Shape mismatch, ragged input or an index outside the matrix.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition on the arguments of an operation does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (matrix files, spec strings).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A reduction stage produced a matrix that does not have the expected shape.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two computations that must agree did not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace critgroup
