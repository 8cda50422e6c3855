#pragma once

#include <stdexcept>
#include <string>

namespace ogs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad shapes, non-finite samples, out-of-range parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A group overlapping an active index has zero energy. Indicates broken
/// active-set bookkeeping rather than bad user input.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// An iterate became non-finite.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A lookup target falls outside the tabulated range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// No calibration table is available for the requested configuration.
class MissingTableError : public Error {
 public:
  using Error::Error;
};

/// File parse / write failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ogs
