#pragma once

#include <stdexcept>
#include <string>

namespace hyperpart {

// Bad user input: malformed config, violated precondition, unknown JSON key.
// CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A finite source ran out: sequence prefix too short for the requested
// construction, enumeration cap reached, ladder walk budget exhausted
// before the target radius. CLI maps this to exit code 3.
struct ExhaustionError : std::runtime_error {
    explicit ExhaustionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested term lies beyond a hard enumeration cap.
struct CapacityError : ExhaustionError {
    explicit CapacityError(const std::string& msg) : ExhaustionError(msg) {}
};

// Numerical failure: rank-deficient sample matrix, non-finite intermediate.
// CLI maps this to exit code 4.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IllConditionedError : NumericalError {
    explicit IllConditionedError(const std::string& msg) : NumericalError(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hyperpart
