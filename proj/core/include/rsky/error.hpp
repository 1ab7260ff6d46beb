#pragma once

#include <stdexcept>
#include <string>

namespace rsky {

// Root of every error raised by the library. The CLI maps ParseError and
// ValidationError onto the data-error exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector lengths or tuple arities disagree.
class ArityError : public Error {
 public:
  using Error::Error;
};

// An operator was asked to run with an incompatible family/method pairing.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (CSV, JSON documents, id lists).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsky
