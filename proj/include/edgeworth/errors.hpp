#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace edgeworth {

// Short %g rendering of a real for error messages.
inline std::string num_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the supported index range (k, p, m, n).
class BoundsError : public Error {
public:
    using Error::Error;
};

// Not enough derivative or moment data supplied.
class ArityError : public Error {
public:
    using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Bad experiment configuration (cutoffs, budgets, model names).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed to meet its tolerance.
class NumericError : public Error {
public:
    using Error::Error;
};

// Characteristic function vanished on the continuation path of log v.
class BranchError : public NumericError {
public:
    BranchError(const std::string& what, double location)
        : NumericError(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

// Grid truncation discarded more mass than the budget allows.
class TruncationError : public NumericError {
public:
    TruncationError(const std::string& what, double lost_mass)
        : NumericError(what), lost_mass_(lost_mass) {}
    double lost_mass() const noexcept { return lost_mass_; }

private:
    double lost_mass_;
};

// Threshold split could not reach the requested mass split on the grid.
class ResolutionError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace edgeworth
