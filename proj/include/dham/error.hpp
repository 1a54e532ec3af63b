#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dham {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Numeric evaluation failed (division by zero, missing symbol value, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A shift operator would move a symbol outside the {-1, 0, +1} window.
class ShiftRangeError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical scheme produced a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An identity or oracle check failed.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dham
