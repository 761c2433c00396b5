#pragma once

#include <stdexcept>
#include <string>

namespace hhm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/// Argument outside the domain of an operation (bad weight, non-positive mean argument, interval outside f's domain).
class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

/// b < a passed to an operation whose constants depend on the orientation of [a,b].
class OrientationError : public DomainError {
public:
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "orientation"; }
};

/// A derivative bound (K, or m/M) was required but neither supplied nor derivable.
class MissingBoundError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "missing-bound"; }
};

class DimensionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "dimension"; }
};

/// Matrix computation lost positivity or the eigensolver failed.
class NumericalBreakdown : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical-breakdown"; }
};

/// Adaptive quadrature hit its level cap before reaching the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_estimate, double achieved_error)
        : Error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

    const char* kind() const noexcept override { return "quadrature-nonconvergence"; }
    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

}  // namespace hhm
