#pragma once

#include <stdexcept>
#include <string>

namespace gwv {

// Error taxonomy mirrored by the CLI exit codes: domain errors exit 3,
// quadrature non-convergence exits 4, configuration/usage problems exit 2.

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Pre/post-selection (near-)orthogonal: the weak value diverges.
class SingularPostselectionError : public DomainError {
public:
    using DomainError::DomainError;
};

// No creation transition exists (requires p_x > 0 for a +x group velocity).
class NoTransitionError : public DomainError {
public:
    using DomainError::DomainError;
};

// Operation requested outside its regime (e.g. S region empty for t_bal <= t_c).
class RegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Carries the best estimate reached and its error bound when the evaluation
// budget runs out before the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best, double bound, long evals_used)
        : std::runtime_error(what), best_estimate(best), error_bound(bound), evals(evals_used) {}

    double best_estimate;
    double error_bound;
    long evals;
};

}  // namespace gwv
