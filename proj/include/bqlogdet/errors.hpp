#pragma once

#include <stdexcept>
#include <string>

namespace bqlogdet {

/// Bad caller input: malformed files, wrong dimensions, invalid options.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix Market syntax error. The message carries the offending line number.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedFormatError : public InputError {
 public:
  using InputError::InputError;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

/// Failure of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPsdError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateSpectrumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BoundsUnavailableError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularGramError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergingCoefficientError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A Lanczos Ritz value came out non-positive inside SLQ.
class IndefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bqlogdet
