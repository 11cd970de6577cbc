#pragma once

#include <stdexcept>
#include <string>

namespace lapreg {

/// Malformed or inconsistent input data (CSV parse failures, shape
/// mismatches against the registry, bad label tokens).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure inside an optimization (NaN residuals, exploded
/// iterates). Distinct from DataError so the CLI can map exit codes.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lapreg
