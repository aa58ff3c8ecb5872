#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ostrowski {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input that is rejected before any computation: bad intervals,
/// p outside ]a,b[, unsorted breakpoints, empty ratio lists and so on.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, Arity };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " at offset " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  /// Byte offset into the source text.
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// Evaluation outside the domain of an elementary operation
/// (log of a non-positive value, division by zero, 0^negative, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The derivative does not exist at the requested point.
class NonDifferentiableError : public Error {
 public:
  NonDifferentiableError(double x, const std::string& what)
      : Error(what), x_(x) {}
  double where() const noexcept { return x_; }

 private:
  double x_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double best, const std::string& what)
      : Error(what), best_(best) {}
  /// Best available value at the point the iteration gave up.
  double best_value() const noexcept { return best_; }

 private:
  double best_;
};

}  // namespace ostrowski
