#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

// Malformed input: wrong sizes, mismatched grids, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input outside the admissible set of the model (d < f < h, ellipticity).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The discrete linear system could not be solved reliably.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

// An intermediate Runge-Kutta stage left the admissible set.
class StepRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace muskat
