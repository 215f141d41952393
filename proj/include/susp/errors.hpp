#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace susp {

/// Base class for all library failures.  Every throw site names the
/// operation that failed and the first violated precondition or invariant,
/// so a caller can surface the stage without parsing message text.
class Error : public std::runtime_error {
public:
    Error(std::string op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(std::move(op)) {}

    const std::string& operation() const noexcept { return op_; }

private:
    std::string op_;
};

/// Derivative order outside the implemented range.
class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

/// A profile of the wrong kind was passed (e.g. a rise profile where a
/// window profile is required).
class WrongProfileError : public Error {
public:
    using Error::Error;
};

/// Grid too coarse (or order too high) for the requested finite-difference
/// stencil.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Iterative solve failed to reach tolerance; carries the last residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(std::string op, const std::string& what, double residual)
        : Error(std::move(op), what + " (last residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double last_residual() const noexcept { return residual_; }

private:
    double residual_ = 0.0;
};

/// The measured C1 size of the perturbation exceeds the contraction margin
/// that guarantees the implicit solves are well posed.
class ContractionViolationError : public Error {
public:
    using Error::Error;
};

/// A user-supplied map failed validation (not symplectic, not close enough
/// to the identity, non-finite values, ...).
class InvalidMapError : public Error {
public:
    using Error::Error;
};

/// Quadrature failed its node-doubling convergence check.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Adaptive step control collapsed below the minimum step size.
class StiffnessError : public Error {
public:
    using Error::Error;
};

/// A trajectory left the chart box in which the construction is valid.
/// Carries the last state inside the box.
class DomainExitError : public Error {
public:
    DomainExitError(std::string op, const std::string& what, std::vector<double> last_state,
                    double time)
        : Error(std::move(op), what), last_state_(std::move(last_state)), time_(time) {}

    const std::vector<double>& last_state() const noexcept { return last_state_; }
    double time() const noexcept { return time_; }

private:
    std::vector<double> last_state_;
    double time_ = 0.0;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace susp
