#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gels {

// Base of every library error; lets the CLI map failures to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Sample failed validation (empty, non-finite, non-positive, degenerate).
class DataError : public Error {
public:
    using Error::Error;
};

// Generic numerical failure (no sign change, no convergence, singular matrix).
class NumericalError : public Error {
public:
    using Error::Error;
};

class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : NumericalError(what), lo_(lo), hi_(hi) {}

    // Best bracket known when iteration stopped.
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

// A moment exists but does not fit in a double. The log value is kept.
class MomentOverflowError : public NumericalError {
public:
    MomentOverflowError(const std::string& what, double log_value)
        : NumericalError(what), log_value_(log_value) {}
    double log_value() const noexcept { return log_value_; }

private:
    double log_value_;
};

// Finite-difference stencil touched a point where the function is not finite.
class StencilError : public NumericalError {
public:
    StencilError(const std::string& what, std::vector<double> point)
        : NumericalError(what), point_(std::move(point)) {}
    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

// Covariance missing or not positive definite, so Wald intervals cannot be formed.
class UncertaintyUnavailable : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Every fit on a k grid failed. Carries one message per k.
class FitFailure : public NumericalError {
public:
    FitFailure(const std::string& what, std::vector<std::string> per_k)
        : NumericalError(what), per_k_(std::move(per_k)) {}
    const std::vector<std::string>& per_k() const noexcept { return per_k_; }

private:
    std::vector<std::string> per_k_;
};

}  // namespace gels
