#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spai {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contract violation by the caller: mixed state spaces, non-closed
/// arguments, malformed partitions or preorders.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A configured size bound would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A model failed validation. `state()` names the offending state when
/// there is one.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::string state = {})
      : Error(what), state_(std::move(state)) {}
  const std::string& state() const { return state_; }

 private:
  std::string state_;
};

/// Syntax error in formula text; `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An atom or operator could not be resolved against a language.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Two independent computation routes disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace spai
