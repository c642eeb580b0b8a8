#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weingarten {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument (index out of range, malformed input, empty list).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Principal curvatures outside the defining cone. Carries the cone margin.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(const std::string& what, double margin);
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// Radius outside the ambient domain interval.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double radius);
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

/// Input for which the requested quantity is not defined (e.g. kappa_1 == kappa_n).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Non-finite intermediate values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Root finding without a sign change.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// Operation not available for the given configuration.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Scenario or initial data rejected before a run starts.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace weingarten
