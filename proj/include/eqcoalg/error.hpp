#pragma once

#include <stdexcept>
#include <string>

namespace eqcoalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not line up (matrix/vector sizes, block counts, carriers).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Two objects that must live over the same group do not.
class GroupMismatchError : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument value (ranges, size caps) is violated.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Cholesky factorization of the normal equations broke down.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate_(condition_estimate) {}

    /// Ratio of the largest to the smallest diagonal pivot seen before failure.
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

}  // namespace eqcoalg
