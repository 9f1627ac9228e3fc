#pragma once

#include <stdexcept>
#include <string>

namespace semigrav {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Moment data does not describe a state with positive width.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// Uncertainty product below lambda*hbar^2/4 beyond tolerance.
class UncertaintyViolationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a potential or a reconstructed function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Missing or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A moment of an order that has not been supplied was requested.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

// Hankel test failed: no distribution represents the moment sequence.
class NoRepresentingDistributionError : public Error {
 public:
  using Error::Error;
};

// Width or radius collapsed towards zero during integration.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// A launched particle escaped instead of returning to its launch radius.
class NoReturnError : public Error {
 public:
  using Error::Error;
};

}  // namespace semigrav
