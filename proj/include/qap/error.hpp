#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of a call was violated (dimension mismatch, index out of range).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `token_index` is 1-based; 0 when not tied to a token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t token_index = 0)
      : Error(what), token_index_(token_index) {}

  std::size_t token_index() const noexcept { return token_index_; }

 private:
  std::size_t token_index_;
};

/// Input ended before the expected number of tokens was read.
class TruncatedInputError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Data is well-formed but breaks a domain invariant (negative entry, non-bijective permutation).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver, stop-condition or benchmark configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Name not present in a registry.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace qap
