#pragma once

#include <stdexcept>
#include <string>

namespace bzi {

// Base for all library-thrown failures so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input is structurally valid but outside the supported domain
// (non-prime MUB dimension, SIC dimension without a known fiducial, ...).
struct UnsupportedError : Error {
    using Error::Error;
};

// Operands disagree in dimension, or a matrix is not square.
struct DimensionError : Error {
    using Error::Error;
};

// A tunable parameter violates a positivity/feasibility constraint.
// Carries the largest feasible value so callers can retry.
struct FeasibilityError : Error {
    FeasibilityError(const std::string& what, double max_feasible)
        : Error(what), max_feasible(max_feasible) {}
    double max_feasible;
};

// An iterative routine hit its iteration cap without converging.
struct ConvergenceError : Error {
    using Error::Error;
};

// A file is missing, unreadable, or holds malformed or invalid content.
struct IoError : Error {
    using Error::Error;
};

}  // namespace bzi
