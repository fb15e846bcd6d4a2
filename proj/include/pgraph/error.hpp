#pragma once

#include <stdexcept>
#include <string>

namespace pgraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands come from different QLO instances.
class InstanceMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

// A result or query lies outside the degree bound of a truncated graph.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  SpecError(int line, int column, const std::string& what)
      : Error(format(line, column, what)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(int line, int column, const std::string& what) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  int line_;
  int column_;
};

// A lemma-level guarantee failed on concrete data (e.g. no witness found).
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pgraph
