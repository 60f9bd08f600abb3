#pragma once

#include <stdexcept>
#include <string>

namespace kgwave {

// Base for every error the library raises on purpose. The CLI maps these to
// exit code 1; anything else is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (modulus, |h| >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parameter combination with no real traveling wave (omega >= 1 for an
// explicit wave, negative period, bad grid size, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Energy level B outside (0, B_omega).
class EnergyLevelError : public Error {
 public:
  using Error::Error;
};

// No energy level realizes the requested period.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

// ODE integration did not reach its target (no return to h = 0, step
// underflow).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// The sampled wave is not resolved by the grid, or an assembled operator is
// not symmetric.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Finite-difference stencil would leave the admissible parameter range.
class StencilError : public Error {
 public:
  using Error::Error;
};

// Mode/speed mismatch in the evolution seeding (odd mode needs c = 0).
class ParityError : public Error {
 public:
  using Error::Error;
};

// Blow-up of the evolved field.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

}  // namespace kgwave
