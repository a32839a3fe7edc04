#pragma once

#include <stdexcept>
#include <string>

namespace simul {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// State lies outside the reduced space (a fixed point or too close to one).
class NotInReducedSpace : public Error {
 public:
  using Error::Error;
};

class InvalidChart : public Error {
 public:
  using Error::Error;
};

/// Requested time function would rotate at zero frequency.
class DegenerateFrequency : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Configuration or input document failed validation. `field()` holds the
/// dotted path of the offending field (empty when the document itself is
/// malformed).
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline void require_same_dim(long a, long b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace detail
}  // namespace simul
