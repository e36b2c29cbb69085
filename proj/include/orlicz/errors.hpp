#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

// Malformed input: bad parameters, grids, descriptors, files.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a function (u < 0, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Evaluation of a tabulated function outside its grid with extrapolation disabled.
struct ExtrapolationError : DomainError {
  using DomainError::DomainError;
};

// Numerical failure: bracket not found, overflow, degenerate fit.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace orlicz
