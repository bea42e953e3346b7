#pragma once

#include <stdexcept>
#include <string>

namespace d4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors or matrices of incompatible shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Composition of morphisms whose boundary counts do not match.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// A dense evaluation or exhaustive search would exceed its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (N = 0, empty row rotation, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace d4
