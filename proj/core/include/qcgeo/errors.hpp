#pragma once

#include <stdexcept>
#include <string>

namespace qcgeo {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid value for a domain object (boundary coordinate, zero weight, bad index).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (files, problem specs, inconsistent arrays).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown (singular matrix, step-size underflow, non-PD metric).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A cross-check between two independent code paths failed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// An integrated trajectory left the interior domain of the coordinates.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double exit_time)
      : Error(what), exit_time_(exit_time) {}
  double exit_time() const { return exit_time_; }

 private:
  double exit_time_;
};

/// An iterative solver did not converge.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace qcgeo
