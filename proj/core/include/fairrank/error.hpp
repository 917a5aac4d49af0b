#pragma once

#include <stdexcept>
#include <string>

namespace fairrank {

// Base for all library errors. The CLI maps each subclass to a stable
// machine-parsable category prefix.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid user configuration (bad fraction, empty required cell before
// training starts, unknown constraint name, ...).
struct ConfigError : Error {
    using Error::Error;
};

// A requested statistic is undefined on the given sample (empty cell,
// single-class batch).
struct StatError : Error {
    using Error::Error;
};

// Tensor/vector dimension mismatch.
struct ShapeError : Error {
    using Error::Error;
};

// Argument outside its mathematical domain (e.g. ROC abscissa not in [0,1]).
struct DomainError : Error {
    using Error::Error;
};

// Tabular schema inconsistent with the file or with itself.
struct SchemaError : Error {
    using Error::Error;
};

// Training aborted (non-finite loss or gradient).
struct TrainError : Error {
    using Error::Error;
};

}  // namespace fairrank
