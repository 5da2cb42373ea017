#pragma once

#include <stdexcept>
#include <string>

namespace rvdp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// Raised when the Fock truncation cannot hold the state; carries the
/// dimension that would have been needed (0 when unknown).
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int suggested_dim)
      : Error(what), suggested_dim_(suggested_dim) {}
  int suggested_dim() const noexcept { return suggested_dim_; }

 private:
  int suggested_dim_;
};

class IntegrationAccuracyError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfigurationError : public Error {
 public:
  using Error::Error;
};

class UndefinedMeasureError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class NotStationaryError : public Error {
 public:
  NotStationaryError(const std::string& what, double last_change)
      : Error(what), last_change_(last_change) {}
  double last_relative_change() const noexcept { return last_change_; }

 private:
  double last_change_;
};

class DegenerateLimitCycleError : public Error {
 public:
  using Error::Error;
};

class NoPeakError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class IncompleteResultError : public Error {
 public:
  using Error::Error;
};

}  // namespace rvdp
