#pragma once

#include <stdexcept>
#include <string>

namespace rpinorm {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-increasing coordinates, nonzero left value,
/// zero weights, and the like.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Input is well-formed but outside the domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// An iterative procedure failed to converge or a post-condition check failed.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A search or enumeration exceeded its configured bound.
class CapacityError : public Error {
public:
  using Error::Error;
};

} // namespace rpinorm
