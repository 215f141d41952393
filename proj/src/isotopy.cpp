#include "susp/isotopy.hpp"

#include "susp/errors.hpp"

#include <string>
#include <utility>

namespace susp {
namespace {

Vec join(const Vec& x, const Vec& y) {
    Vec w = x;
    for (double v : y) w.push_back(v);
    return w;
}

} // namespace

IsotopyFamily::IsotopyFamily(GeneratingPerturbation pert, double xi)
    : pert_(std::move(pert)), rise_(rise_profile(xi)) {
    if (!(pert_.delta1 < 0.5))
        throw ContractionViolationError(
            "IsotopyFamily", "generator C^1 size " + std::to_string(pert_.delta1) +
                                 " is not below 1/2; path slices would lose the "
                                 "contraction margin");
    newton_.tol = 1e-13;
    newton_.max_iter = 60;
}

double IsotopyFamily::ell(double alpha, int order) const { return eval_bump(rise_, alpha, order); }

Vec IsotopyFamily::eval(double alpha, const Vec& z) const {
    const double l = ell(alpha, 0);
    if (l == 0.0) return z;

    const std::size_t m = pert_.dim / 2;
    Vec x(z.begin(), z.begin() + m);
    Vec y(z.begin() + m, z.end());

    auto residual = [&](const Vec& xp) {
        Vec g = pert_.grad(join(xp, y));
        Vec r = zeros(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = xp[i] + l * g[m + i] - x[i];
        return r;
    };
    auto jacobian = [&](const Vec& xp) {
        Mat h = pert_.hess(join(xp, y));
        Mat jac = Mat::identity(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) jac(i, j) += l * h(m + i, j);
        return jac;
    };

    Vec xp = newton_solve(residual, JacFn(jacobian), x, newton_);
    Vec g = pert_.grad(join(xp, y));
    Vec out = xp;
    for (std::size_t i = 0; i < m; ++i) out.push_back(y[i] + l * g[i]);
    return out;
}

Vec IsotopyFamily::inverse(double alpha, const Vec& zp) const {
    const double l = ell(alpha, 0);
    if (l == 0.0) return zp;

    const std::size_t m = pert_.dim / 2;
    Vec xp(zp.begin(), zp.begin() + m);
    Vec yp(zp.begin() + m, zp.end());

    auto residual = [&](const Vec& y) {
        Vec g = pert_.grad(join(xp, y));
        Vec r = zeros(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = y[i] + l * g[i] - yp[i];
        return r;
    };
    auto jacobian = [&](const Vec& y) {
        Mat h = pert_.hess(join(xp, y));
        Mat jac = Mat::identity(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) jac(i, j) += l * h(i, m + j);
        return jac;
    };

    Vec y = newton_solve(residual, JacFn(jacobian), yp, newton_);
    Vec g = pert_.grad(join(xp, y));
    Vec out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(xp[i] + l * g[m + i]);
    for (double v : y) out.push_back(v);
    return out;
}

Vec IsotopyFamily::velocity(double alpha, const Vec& z) const {
    const std::size_t m = pert_.dim / 2;
    const double lp = ell(alpha, 1);
    if (lp == 0.0) return zeros(2 * m);
    const double l = ell(alpha, 0);

    Vec image = eval(alpha, z);
    Vec xp(image.begin(), image.begin() + m);
    Vec y(z.begin() + m, z.end());
    Vec w = join(xp, y);
    Vec g = pert_.grad(w);
    Mat h = pert_.hess(w);

    // Differentiating x = x' + ell dV/dy(x', y) in alpha at fixed (x, y):
    // (I + ell d2V/dy dx') xdot' = -ell' dV/dy.
    Mat a = Mat::identity(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) += l * h(m + i, j);
    Vec rhs = zeros(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = -lp * g[m + i];
    Vec xdot;
    if (!solve_linear(a, rhs, xdot))
        throw ConvergenceError("isotopy_velocity", "singular implicit-derivative system", 0.0);

    // y' = y + ell dV/dx'(x', y) with y fixed and x' = x'(alpha).
    Vec out = xdot;
    for (std::size_t i = 0; i < m; ++i) {
        double v = lp * g[i];
        for (std::size_t j = 0; j < m; ++j) v += l * h(i, j) * xdot[j];
        out.push_back(v);
    }
    return out;
}

Vec IsotopyFamily::field(double alpha, const Vec& zp) const {
    if (ell(alpha, 1) == 0.0) return zeros(pert_.dim);
    return velocity(alpha, inverse(alpha, zp));
}

} // namespace susp
