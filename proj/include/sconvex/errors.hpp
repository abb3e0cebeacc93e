#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sconvex {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Power-sum antiderivative requested for a term with exponent -1.
class ExponentError : public Error {
 public:
  using Error::Error;
};

/// A function returned a non-finite value where a finite one is required.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its bisection limit before meeting tolerance.
class DepthExhausted : public Error {
 public:
  using Error::Error;
};

/// The instance generator produced something that failed certification.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// A bound needs an exponent q that was not supplied.
class MissingParam : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& expected)
      : Error("parse error at byte " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace sconvex
