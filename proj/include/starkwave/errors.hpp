#pragma once

#include <stdexcept>

namespace starkwave {

/// An argument lies outside the mathematical domain of an operation
/// (negative Bessel argument, time outside a designed field's interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A target wavefront would need |d rho/dt| >= 1, i.e. a complex field.
class SuperluminalError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated lattice window is too narrow for the requested evolution.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time-stepping integrator needed more steps than it is allowed.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: field files, trajectory files, CLI configuration.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace starkwave
