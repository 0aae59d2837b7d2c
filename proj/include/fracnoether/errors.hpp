#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracnoether {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma (or a closed-form derivative) evaluated at a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Derivative requested for an order the discrete schemes do not cover.
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A transformed time map is not strictly increasing for the probe epsilon.
class ResamplingError : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class AutonomyError : public Error {
 public:
  using Error::Error;
};

/// Malformed arithmetic expression; `position` is the 0-based offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at column " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Invalid problem specification file; `line` is 1-based, 0 when not tied to a line.
class SpecError : public Error {
 public:
  SpecError(const std::string& message, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fracnoether
