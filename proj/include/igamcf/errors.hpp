#pragma once

#include <stdexcept>
#include <string>

namespace igamcf {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments to a constructor or operation (bad degree, point outside the domain, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The parameterization lost rank: det G at or below the degeneracy threshold.
class DegenerateSurface : public Error {
 public:
  using Error::Error;
};

/// A linear solve did not reach the required relative residual.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// The nonlinear Ritz fixed point did not contract, even after raising lambda.
class NoContraction : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace igamcf
