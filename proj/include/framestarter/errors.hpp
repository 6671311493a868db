#pragma once

#include <stdexcept>
#include <string>

namespace framestarter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands from different groups, wrong coordinate counts, malformed pairs.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A subgroup order or starter type that does not fit the group.
class InvalidTypeError : public Error {
 public:
  using Error::Error;
};

/// Reduction modulo m where m does not divide the cyclic order.
class InvalidHomomorphismError : public Error {
 public:
  using Error::Error;
};

/// Operation undefined for this group (halving in even order, etc).
class UnsupportedOperationError : public Error {
 public:
  using Error::Error;
};

/// Two starters whose pairs cannot be matched by difference.
class NotComparableError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation precondition; `what()` carries the witness.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Bad search configuration (missing budget for large orders, etc).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON document or type string. `location()` is a JSON pointer
/// or a short description of where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message),
        location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace framestarter
