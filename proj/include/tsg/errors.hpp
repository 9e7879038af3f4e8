#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsg {

using index_t = std::uint32_t;

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (files, JSON documents, matrix text).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A size bound configured for an exhaustive computation was exceeded.
class BoundExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The field characteristic divides the order of a relevant group.
class CharacteristicError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An internal consistency check failed. Seeing this is a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

namespace detail {
inline void require(bool ok, std::string const& what) {
  if (!ok) throw PreconditionError(what);
}
inline void ensure(bool ok, std::string const& what) {
  if (!ok) throw InvariantViolation(what);
}
}  // namespace detail

}  // namespace tsg
