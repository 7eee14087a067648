#pragma once

#include <stdexcept>
#include <string>

namespace thermflow {

/// Base of every error the library raises on bad input or broken contracts.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or resolution failure in scene, predicate or formula text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// An object exists under the requested id but has a different role.
class RoleMismatch : public Error {
 public:
  using Error::Error;
};

/// A rule was applied whose guard does not hold.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Time was asked to advance while an urgent rule is still enabled.
class UrgencyViolation : public Error {
 public:
  using Error::Error;
};

/// Discrete normalization did not reach a fixpoint within its iteration cap.
class LivelockError : public Error {
 public:
  using Error::Error;
};

}  // namespace thermflow
