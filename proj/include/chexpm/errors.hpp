#pragma once

#include <stdexcept>
#include <string>

namespace chexpm {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or out-of-contract input (wrong dimensions, non-finite entries, ...).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// An iteration failed to converge or an internal cross-check disagreed.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg, double diagnostic = 0.0)
        : Error(msg), diagnostic_(diagnostic) {}
    // Worst residual / norm that triggered the failure.
    double diagnostic() const { return diagnostic_; }

private:
    double diagnostic_;
};

// Requested order outside the implemented range (e.g. explicit forms exist for N = 2..5 only).
class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

// A formula valid only for simple eigenvalues was applied inside a degenerate cluster.
class DegenerateSpectrumError : public Error {
public:
    using Error::Error;
};

// Invariants (or spectrum components) that no real spectrum can realize.
class InconsistentInvariantsError : public Error {
public:
    using Error::Error;
};

// Resolvent evaluated too close to one of its poles.
class PoleProximityError : public Error {
public:
    using Error::Error;
};

}  // namespace chexpm
