#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph DSL, element expression or scalar text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnknownIdentifier : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The operation needs a graph without cycles.
class CyclicGraph : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The algebra has a cycle and hence no finite basis.
class InfiniteDimensional : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotIdempotent : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Operation only defined for the single-vertex single-loop graph.
class WrongGraph : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Operands belong to different algebra instances (graph or field).
class MixedAlgebra : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ShapeMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Basis would exceed the configured dimension cap.
class DimensionCapExceeded : public Error {
 public:
  DimensionCapExceeded(std::size_t required, std::size_t cap)
      : Error("dimension " + std::to_string(required) + " exceeds cap " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t required_;
  std::size_t cap_;
};

/// A result that theory guarantees failed to materialize. Indicates a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace lpa
