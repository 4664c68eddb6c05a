#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meanlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the interval a generator or mean is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A function body produced a non-finite value (pole, log of a non-positive number, overflow).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Target value of an inversion cannot be bracketed inside the domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure ran out of its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Affine fit against a generator that is numerically constant.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Arity or shape mismatch between a mean and its arguments.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// A function offered as a mean violates the mean bounds or strictness.
class NotAMeanError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        message_(message),
        position_(position) {}

  const std::string& message() const noexcept { return message_; }
  /// Byte offset into the parsed text.
  std::size_t position() const noexcept { return position_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// Generator failed its strict-monotonicity grid check. Carries the witness pair.
class MonotonicityError : public Error {
 public:
  MonotonicityError(const std::string& message, double x, double y, double gx, double gy)
      : Error(message), x_(x), y_(y), gx_(gx), gy_(gy) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double gx() const noexcept { return gx_; }
  double gy() const noexcept { return gy_; }

 private:
  double x_, y_, gx_, gy_;
};

}  // namespace meanlab
