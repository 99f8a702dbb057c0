#pragma once

#include <stdexcept>
#include <string>

namespace reprank {

// Bad input data (CSV syntax, out-of-range ratings).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration values (lambda out of range, bad scale, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values or other numerical failure mid-computation.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace reprank
