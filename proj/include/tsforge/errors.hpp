#pragma once

#include <stdexcept>

namespace tsforge {

// Error categories map 1:1 onto C API status values and CLI exit codes.

/// Bad or inconsistent configuration (unknown key, invalid order, missing path in config).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or insufficient input data (CSV parse failure, invariant violation, empty split).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric failure (constant column, zero variance, non-stationary solution, overflow).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tsforge
