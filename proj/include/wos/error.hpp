#pragma once

#include <stdexcept>
#include <string>

namespace wos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scholar, publication, or measure that does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data that violates a documented precondition.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Snapshot or export file that cannot be read back (bad magic, version, checksum).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace wos
