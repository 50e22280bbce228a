#pragma once

#include <stdexcept>
#include <string>

namespace viab {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameters, thresholds, or other caller-supplied values.
struct ValidationError : Error {
  using Error::Error;
};

// A documented precondition (e.g. the sufficient growth conditions at the
// biomass floors) does not hold at the call site.
struct PreconditionError : Error {
  using Error::Error;
};

// The dynamics produced a non-finite value.
struct EvaluationError : Error {
  using Error::Error;
};

// A requested root or control does not exist (e.g. exact controls asked for
// outside the kernel).
struct NoSolutionError : Error {
  using Error::Error;
};

// A property the model declares about itself (monotonicity, control upper
// hint) fails numerically.
struct ModelContractError : Error {
  using Error::Error;
};

// A feedback policy was queried at a state outside its domain.
struct PolicyError : Error {
  using Error::Error;
};

// Malformed observation data.
struct DataError : Error {
  using Error::Error;
};

// Malformed configuration or command-line usage.
struct UsageError : Error {
  using Error::Error;
};

}  // namespace viab
