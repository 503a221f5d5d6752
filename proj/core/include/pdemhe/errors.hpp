#pragma once

#include <stdexcept>
#include <string>

namespace pdemhe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: violated stability/CFL preconditions, bad presets,
/// malformed config files, missing coefficients.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A fixed-point or successive-approximation iteration did not reach its
/// tolerance within the iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what + " (last residual " + std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// A query fell outside the stored time window, a history received a
/// timestamp gap, or an estimator was queried before it had enough data.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Two objects defined on different grids were combined.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinity where a finite value is required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdemhe
