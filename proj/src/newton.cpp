#include "susp/newton.hpp"

#include "susp/errors.hpp"

#include <cmath>

namespace susp {

Mat fd_jacobian(const VecFn& f, const Vec& x, double step) {
    const std::size_t n = x.size();
    Vec xp = x, xm = x;
    Mat jac;
    for (std::size_t j = 0; j < n; ++j) {
        xp[j] = x[j] + step;
        xm[j] = x[j] - step;
        const Vec fp = f(xp);
        const Vec fm = f(xm);
        if (j == 0) jac = Mat(fp.size(), n);
        for (std::size_t i = 0; i < fp.size(); ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * step);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    if (n == 0) jac = Mat(0, 0);
    return jac;
}

Vec newton_solve(const VecFn& residual, const std::optional<JacFn>& jacobian, Vec guess,
                 const NewtonSettings& settings) {
    Vec x = std::move(guess);
    double res_norm = norm_inf(residual(x));
    if (res_norm <= settings.tol) return x;

    for (int it = 0; it < settings.max_iter; ++it) {
        const Vec r = residual(x);
        res_norm = norm_inf(r);
        if (!std::isfinite(res_norm))
            throw ConvergenceError("newton_solve", "residual became non-finite", res_norm);
        if (res_norm <= settings.tol) return x;

        const Mat jac = jacobian ? (*jacobian)(x) : fd_jacobian(residual, x, settings.fd_step);
        Vec step;
        if (!solve_linear(jac, r, step))
            throw ConvergenceError("newton_solve", "singular Jacobian in Newton step", res_norm);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step[i];
    }

    res_norm = norm_inf(residual(x));
    if (res_norm <= settings.tol) return x;
    throw ConvergenceError("newton_solve", "no convergence within max_iter", res_norm);
}

} // namespace susp
