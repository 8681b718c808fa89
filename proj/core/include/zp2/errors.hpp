#pragma once

#include <stdexcept>
#include <string>

namespace zp2 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad user input: exit code 2 at the CLI
struct ValidationError : Error {
    using Error::Error;
};

struct EisensteinError : ValidationError {
    using ValidationError::ValidationError;
};

struct PreconditionError : ValidationError {
    using ValidationError::ValidationError;
};

struct MixedRingError : Error {
    using Error::Error;
};

struct ValuationError : Error {
    using Error::Error;
};

struct PrecisionError : Error {
    using Error::Error;
};

struct DivisibilityError : Error {
    using Error::Error;
};

struct LinearSolveError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

// an internal identity failed; indicates a bug, never bad input
struct CertificationError : Error {
    using Error::Error;
};

}  // namespace zp2
