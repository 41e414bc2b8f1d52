#pragma once

#include <stdexcept>
#include <string>

namespace bresse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter or a position lies outside its admissible domain.
class ParameterError : public Error {
 public:
  ParameterError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Vector or matrix dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A linear solve, eigen-decomposition or iteration failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The shifted operator i*lambda - A is numerically singular.
class NearSingularError : public NumericalError {
 public:
  NearSingularError(double lambda, const std::string& what)
      : NumericalError(what), lambda_(lambda) {}

  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// Malformed configuration text.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace bresse
