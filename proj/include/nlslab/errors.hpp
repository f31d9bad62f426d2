#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

// Error taxonomy mapped to CLI exit codes: parameter/domain/structural -> 2,
// numerical/solver -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParameterError : Error {
  using Error::Error;
};

// An operation invoked outside the regime where it is meaningful.
struct DomainError : Error {
  using Error::Error;
};

// Mismatched grids, inconsistent inputs.
struct StructuralError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

struct SolverFailure : Error {
  using Error::Error;
};

struct NonContractionError : SolverFailure {
  using SolverFailure::SolverFailure;
};

struct MissingOracleError : ParameterError {
  using ParameterError::ParameterError;
};

}  // namespace nlslab
