#pragma once

#include <stdexcept>
#include <string>

namespace jointlab {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto stable exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is geometrically or algebraically degenerate (zero direction,
/// zero polynomial, k = 0 grid, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Matrix has the wrong shape for the requested operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An instance violates the hypotheses of a proof procedure.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Pipeline constants violate the constraint system.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance/polynomial text. The message carries the line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when an internally asserted mathematical invariant fails. Seeing
/// one means a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jointlab
