#pragma once

#include "susp/smallvec.hpp"

#include <functional>
#include <optional>

namespace susp {

struct NewtonSettings {
    double tol = 1e-12;      // stop when the residual sup-norm falls below this
    int max_iter = 50;
    double fd_step = 1e-7;   // step for the finite-difference Jacobian fallback
};

using VecFn = std::function<Vec(const Vec&)>;
using JacFn = std::function<Mat(const Vec&)>;

/// Solves residual(x) = 0 by damped-free Newton iteration from `guess`.
///
/// If `jacobian` is absent the Jacobian is assembled column by column from
/// central differences of the residual with step `settings.fd_step`.
/// Throws ConvergenceError (carrying the last residual norm) if the
/// tolerance is not reached within max_iter iterations, and Error if a
/// Jacobian solve breaks down.
Vec newton_solve(const VecFn& residual, const std::optional<JacFn>& jacobian, Vec guess,
                 const NewtonSettings& settings = {});

/// Central-difference Jacobian of `f` at `x` (used by newton_solve and by
/// validation code that probes black-box maps).
Mat fd_jacobian(const VecFn& f, const Vec& x, double step);

} // namespace susp
