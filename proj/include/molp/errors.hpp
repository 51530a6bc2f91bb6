#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace molp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The feasible set {x : Ax = c, x >= 0} is empty.
class InfeasibleError : public Error {
 public:
  InfeasibleError() : Error("the constraint set is empty") {}
};

/// Objective `index` (0-based) is not bounded from below over the feasible set.
class UnboundedObjectiveError : public Error {
 public:
  explicit UnboundedObjectiveError(std::size_t index)
      : Error("objective " + std::to_string(index + 1) + " is unbounded from below"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// The solver lost numerical consistency (singular basis, drifted residual, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidCut : public Error {
 public:
  using Error::Error;
};

class InvalidAdd : public Error {
 public:
  using Error::Error;
};

class DegenerateSpan : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace molp
