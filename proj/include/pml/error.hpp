#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pml {

/// Base class of every error raised by the library. The CLI maps all of
/// them to exit code 3 unless a command treats a kind as a verdict.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Sorted atoms (X_m) and bare identifiers (X) in the same formula.
class MixedAtomKinds : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A substitution or translation whose operand has the wrong variable class.
class SortViolation : public Error {
 public:
  using Error::Error;
};

class ClassicalVariablePresent : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON documents (wrong shape, unknown rule names, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class UnsupportedRuleSet : public Error {
 public:
  using Error::Error;
};

class NotClassicallyValid : public Error {
 public:
  using Error::Error;
};

}  // namespace pml
