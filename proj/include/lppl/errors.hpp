#pragma once

#include <stdexcept>
#include <string>

namespace lppl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data could not be read or validated into a PriceSeries.
struct IngestError : Error {
    using Error::Error;
};

// The (tc, alpha, omega) shape makes the linear design matrix rank-deficient.
struct DegenerateShapeError : Error {
    using Error::Error;
};

// No admissible fit could be produced for a window.
struct FitError : Error {
    using Error::Error;
};

struct NoQualifiedFitsError : Error {
    using Error::Error;
};

// No bootstrap tc landed inside the forecast horizon.
struct EmptyEnsembleError : Error {
    using Error::Error;
};

struct LedgerError : Error {
    using Error::Error;
};

// Evaluation asked for data the series does not cover.
struct EvaluationRangeError : Error {
    using Error::Error;
};

}  // namespace lppl
