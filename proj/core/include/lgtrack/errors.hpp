#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgtrack {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented domain invariant (box size, confidence range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two embeddings come from different feature spaces.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Kalman innovation covariance could not be factorized.
class DegenerateFilter : public Error {
 public:
  using Error::Error;
};

/// Frames were fed out of order.
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lgtrack
