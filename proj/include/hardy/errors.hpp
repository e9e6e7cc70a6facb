#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed symbol or expression (duplicate jump locations, bad tree).
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Invalid argument supplied by the caller.
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Inconsistent configuration, e.g. an unregistered analytic map or a
/// series ratio that does not converge.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// A numerical procedure did not reach its tolerance. `achieved` carries
/// the best error estimate that was reached, when one is known.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what, double achieved = -1.0)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

/// The symbol curve comes too close to the origin for an index to exist.
class NotFredholmError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace hardy
