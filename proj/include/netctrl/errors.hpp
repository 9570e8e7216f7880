#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netctrl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix or vector shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A graph that violates the model invariants (self-loop, duplicate edge, ...).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text, tagged with a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Floating point kernel failure (non-convergence, overflow, NaN input).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same verdict disagree. Raised when a graph
/// criterion and the exact rank test contradict each other, which would
/// falsify the underlying theorem (or expose a bug).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Steering refused because the output Gramian is singular or ill-conditioned.
class SteeringError : public Error {
 public:
  SteeringError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}

  double condition() const { return condition_; }

 private:
  double condition_;
};

}  // namespace netctrl
