#pragma once

#include <stdexcept>
#include <string>

namespace rht {

/// Base for every error caused by the input (bad presentation, violated
/// precondition). The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed structure failed one of its own invariants. This is a bug,
/// never an input problem; the CLI maps it to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class DifferentialNotSquareZero : public Error {
 public:
  using Error::Error;
};

class NotAMorphism : public Error {
 public:
  using Error::Error;
};

class NotARetract : public Error {
 public:
  using Error::Error;
};

class TopDegreeNotFound : public Error {
 public:
  using Error::Error;
};

class NotSimplyConnected : public Error {
 public:
  using Error::Error;
};

class ConnectivityViolation : public Error {
 public:
  using Error::Error;
};

class NonHomogeneousInput : public Error {
 public:
  using Error::Error;
};

}  // namespace rht
