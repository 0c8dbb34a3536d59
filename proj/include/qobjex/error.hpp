#ifndef QOBJEX_ERROR_HPP
#define QOBJEX_ERROR_HPP

#include <stdexcept>

namespace qobjex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied data was violated.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A dense construction would exceed the configured qubit cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// The requested (family, k) or case has no implemented formula.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace qobjex

#endif  // QOBJEX_ERROR_HPP
