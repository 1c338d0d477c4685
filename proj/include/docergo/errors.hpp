#pragma once

#include <stdexcept>
#include <string>

namespace docergo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise malformed matrix input.
class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (non-unitary gate, missing
/// CPTP certificate, non-Hermitian input to the lambda formula, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotStochastic : public Error {
 public:
  using Error::Error;
};

/// Simulation size cap exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON/CSV input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace docergo
