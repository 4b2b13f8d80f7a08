// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace sharpbound {

// Inputs with incompatible shapes.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Spectral-calculus input outside the requested domain (e.g. inverse of a
// matrix with an eigenvalue below the floor).
struct DomainViolation : std::domain_error {
  using std::domain_error::domain_error;
};

// Iterative eigensolver exhausted its sweep budget.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix required to be strictly positive fails the positivity floor.
struct NotStrictlyPositive : std::domain_error {
  using std::domain_error::domain_error;
};

// Weighted-mean exponent outside [0,1].
struct WeightOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Representing function undefined, non-finite, or malformed where evaluated.
struct RepresentingFunctionDomain : std::domain_error {
  using std::domain_error::domain_error;
};

// Interval endpoints coincide where a maximization expects an interior.
struct DegenerateInterval : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed serialized input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deserialized object fails a structural invariant.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sharpbound
