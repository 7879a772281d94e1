#pragma once

#include <stdexcept>
#include <string>

namespace sdclab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension or index mismatch between vectors, matrices or spaces.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// A pair of maps fed to a homology computation does not compose to zero.
class NotAComplexError : public Error {
public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A monomial quotient is infinite-dimensional.
class NonArtinianError : public Error {
public:
  using Error::Error;
};

/// Two values live over different rings or spaces and cannot be combined.
class IncompatibilityError : public Error {
public:
  using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
public:
  using Error::Error;
};

/// A requested computation falls outside the supported fragment.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

}  // namespace sdclab
