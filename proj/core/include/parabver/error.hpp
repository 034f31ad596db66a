#pragma once

#include <stdexcept>
#include <string>

namespace parabver {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation (e.g. r < 1 for phi).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent arguments.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Overflow, or a query outside a tabulated range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (non-convergence, undefined root split).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A documented invariant of a value type does not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The problem shape is unsupported by a check (e.g. N > m in the covering condition).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The regularity index falls on a jump of the compatibility-condition count.
class ExceptionalRegularityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace parabver
