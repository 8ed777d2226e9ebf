#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monoclone {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-facing input: non-prime-power q, the constant monomial, a
/// divisor that does not divide q-1, mismatched fields.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The bounded universe cannot hold the requested objects.
class CapError : public Error {
 public:
  using Error::Error;
};

/// Monomial text or a JSON document could not be parsed.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(message), position_(0) {}
  ParseError(std::size_t position, const std::string& expected,
             const std::string& input)
      : Error("parse error at position " + std::to_string(position) +
              ": expected " + expected + " in \"" + input + "\""),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace monoclone
