#include "susp/generator.hpp"

#include "susp/bump.hpp"
#include "susp/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace susp {
namespace {

std::size_t lattice_points_for_dim(std::size_t dim) {
    if (dim <= 2) return 21;
    if (dim <= 4) return 9;
    return 5;
}

// Inner radius fraction of the radial cutoff: below this the cutoff is
// identically 1, beyond rho it is identically 0.
constexpr double kCutoffPlateau = 0.5;

double pow_int(double base, int e) {
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

/// Radial cutoff built from the window profile: identically 1 on the inner
/// half of the rho-ball, identically 0 outside it.  Returns value, gradient
/// and Hessian at z; both derivative pieces vanish exactly on the plateau,
/// so the cutoff never perturbs a factor near the origin.
struct CutoffEval {
    double c0 = 1.0;
    Vec grad;
    Mat hess;
};

CutoffEval eval_cutoff(const BumpProfile& profile, const Vec& z) {
    const std::size_t n = z.size();
    CutoffEval out;
    out.grad = zeros(n);
    out.hess = Mat(n, n);

    const double r = norm2(z);
    const double c0 = eval_bump(profile, r, 0);
    out.c0 = c0;
    const double c1 = eval_bump(profile, r, 1);
    const double c2 = eval_bump(profile, r, 2);
    if (c1 == 0.0 && c2 == 0.0) return out;

    // r > 0 here: the flat region around the origin was handled above.
    Vec u = scale(z, 1.0 / r);
    for (std::size_t i = 0; i < n; ++i) out.grad[i] = c1 * u[i];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double proj = u[i] * u[j];
            const double tang = (i == j ? 1.0 : 0.0) - proj;
            out.hess(i, j) = c2 * proj + (c1 / r) * tang;
        }
    }
    return out;
}

/// Scalar factor with analytic derivatives, multiplied by the radial cutoff.
struct SmoothFactor {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    std::function<Mat(const Vec&)> hess;
};

GeneratingPerturbation cutoff_product(std::size_t dim, double rho, double amplitude,
                                      SmoothFactor factor, std::string family) {
    const BumpProfile profile = window_profile(kCutoffPlateau, rho);
    auto value = [factor, profile, amplitude](const Vec& z) {
        const double c0 = eval_bump(profile, norm2(z), 0);
        if (c0 == 0.0) return 0.0;
        return amplitude * factor.value(z) * c0;
    };
    auto grad = [factor, profile, amplitude](const Vec& z) {
        const CutoffEval cut = eval_cutoff(profile, z);
        if (cut.c0 == 0.0 && norm_inf(cut.grad) == 0.0) return zeros(z.size());
        const double p = factor.value(z);
        Vec dp = factor.grad(z);
        Vec out = zeros(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            out[i] = amplitude * (dp[i] * cut.c0 + p * cut.grad[i]);
        return out;
    };
    auto hess = [factor, profile, amplitude](const Vec& z) {
        const std::size_t n = z.size();
        const CutoffEval cut = eval_cutoff(profile, z);
        Mat out(n, n);
        if (cut.c0 == 0.0 && norm_inf(cut.grad) == 0.0 && cut.hess.max_abs() == 0.0)
            return out;
        const double p = factor.value(z);
        Vec dp = factor.grad(z);
        Mat d2p = factor.hess(z);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) = amplitude * (d2p(i, j) * cut.c0 + dp[i] * cut.grad[j] +
                                         dp[j] * cut.grad[i] + p * cut.hess(i, j));
            }
        }
        return out;
    };
    GeneratingPerturbation pert;
    pert.dim = dim;
    pert.rho = rho;
    pert.compact = true;
    pert.family = std::move(family);
    pert.smooth_breaks = Vec{kCutoffPlateau * rho, rho};
    pert.value = std::move(value);
    pert.grad = std::move(grad);
    pert.hess = std::move(hess);
    pert.delta1 = measure_delta1(pert.grad, dim, rho);
    return pert;
}

SmoothFactor cubic_factor(std::size_t m) {
    auto value = [m](const Vec& z) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = z[i], y = z[m + i];
            s += x * x * x / 3.0 + x * y * y;
        }
        return s;
    };
    auto grad = [m](const Vec& z) {
        Vec out = zeros(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = z[i], y = z[m + i];
            out[i] = x * x + y * y;
            out[m + i] = 2.0 * x * y;
        }
        return out;
    };
    auto hess = [m](const Vec& z) {
        Mat out(2 * m, 2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = z[i], y = z[m + i];
            out(i, i) = 2.0 * x;
            out(i, m + i) = 2.0 * y;
            out(m + i, i) = 2.0 * y;
            out(m + i, m + i) = 2.0 * x;
        }
        return out;
    };
    return SmoothFactor{value, grad, hess};
}

struct Monomial {
    std::array<int, kMaxDim> exp{};
    double coeff = 0.0;
};

SmoothFactor polynomial_factor(std::size_t n, std::vector<Monomial> terms) {
    auto value = [n, terms](const Vec& z) {
        double s = 0.0;
        for (const Monomial& t : terms) {
            double v = t.coeff;
            for (std::size_t i = 0; i < n; ++i) v *= pow_int(z[i], t.exp[i]);
            s += v;
        }
        return s;
    };
    auto grad = [n, terms](const Vec& z) {
        Vec out = zeros(n);
        for (const Monomial& t : terms) {
            for (std::size_t j = 0; j < n; ++j) {
                if (t.exp[j] == 0) continue;
                double v = t.coeff * t.exp[j] * pow_int(z[j], t.exp[j] - 1);
                for (std::size_t i = 0; i < n; ++i)
                    if (i != j) v *= pow_int(z[i], t.exp[i]);
                out[j] += v;
            }
        }
        return out;
    };
    auto hess = [n, terms](const Vec& z) {
        Mat out(n, n);
        for (const Monomial& t : terms) {
            for (std::size_t j = 0; j < n; ++j) {
                if (t.exp[j] == 0) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    double v = t.coeff;
                    if (j == k) {
                        if (t.exp[j] < 2) continue;
                        v *= t.exp[j] * (t.exp[j] - 1) * pow_int(z[j], t.exp[j] - 2);
                    } else {
                        if (t.exp[k] == 0) continue;
                        v *= t.exp[j] * pow_int(z[j], t.exp[j] - 1);
                        v *= t.exp[k] * pow_int(z[k], t.exp[k] - 1);
                    }
                    for (std::size_t i = 0; i < n; ++i)
                        if (i != j && i != k) v *= pow_int(z[i], t.exp[i]);
                    out(j, k) += v;
                }
            }
        }
        return out;
    };
    return SmoothFactor{value, grad, hess};
}

void enumerate_exponents(std::size_t n, int degree_left, std::size_t pos,
                         std::array<int, kMaxDim>& current, std::vector<std::array<int, kMaxDim>>& out) {
    if (pos == n) {
        out.push_back(current);
        return;
    }
    for (int e = 0; e <= degree_left; ++e) {
        current[pos] = e;
        enumerate_exponents(n, degree_left - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

double unit_interval(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace

double measure_delta1(const std::function<Vec(const Vec&)>& grad, std::size_t dim, double rho) {
    GridDomain domain;
    domain.dim = dim;
    domain.center = zeros(dim);
    domain.radius = rho;
    domain.points_per_axis = lattice_points_for_dim(dim);
    return cs_norm(grad, domain, 1);
}

GeneratingPerturbation make_perturbation(std::size_t dim, double rho,
                                         std::function<double(const Vec&)> value,
                                         std::function<Vec(const Vec&)> grad,
                                         std::function<Mat(const Vec&)> hess, bool compact,
                                         std::string family) {
    if (dim == 0 || dim % 2 != 0 || dim > kMaxDim)
        throw ConfigError("make_perturbation", "dim must be even and at most " +
                                                   std::to_string(kMaxDim));
    GeneratingPerturbation pert;
    pert.dim = dim;
    pert.rho = rho;
    pert.compact = compact;
    pert.family = std::move(family);
    pert.value = std::move(value);
    pert.grad = std::move(grad);
    pert.hess = std::move(hess);
    pert.delta1 = measure_delta1(pert.grad, dim, rho);
    return pert;
}

GeneratingPerturbation make_linear_shear(std::size_t d, double eps, double rho) {
    if (d < 2) throw ConfigError("make_linear_shear", "need d >= 2");
    const std::size_t m = d - 1;
    auto value = [m, eps](const Vec& z) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += z[i] * z[m + i];
        return eps * s;
    };
    auto grad = [m, eps](const Vec& z) {
        Vec out = zeros(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            out[i] = eps * z[m + i];
            out[m + i] = eps * z[i];
        }
        return out;
    };
    auto hess = [m, eps](const Vec&) {
        Mat out(2 * m, 2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            out(i, m + i) = eps;
            out(m + i, i) = eps;
        }
        return out;
    };
    return make_perturbation(2 * m, rho, value, grad, hess, /*compact=*/false, "linear-shear");
}

GeneratingPerturbation make_cubic(std::size_t d, double eps, double rho) {
    if (d < 2) throw ConfigError("make_cubic", "need d >= 2");
    const std::size_t m = d - 1;
    SmoothFactor factor = cubic_factor(m);
    // Calibrated so the measured C^1 size equals the nominal eps.  With the
    // raw amplitude the cutoff product tails push delta1 to ~7.5*eps, which
    // would trip the admissibility gate long before eps itself looks large;
    // calibration keeps "eps" meaning the same thing for every family.
    GeneratingPerturbation unit = cutoff_product(2 * m, rho, 1.0, factor, "cubic");
    return cutoff_product(2 * m, rho, eps / unit.delta1, factor, "cubic");
}

GeneratingPerturbation make_random_poly(std::size_t d, double eps, double rho,
                                        std::uint64_t seed) {
    if (d < 2) throw ConfigError("make_random_poly", "need d >= 2");
    const std::size_t m = d - 1;
    const std::size_t n = 2 * m;

    std::vector<std::array<int, kMaxDim>> exponents;
    std::array<int, kMaxDim> current{};
    enumerate_exponents(n, 4, 0, current, exponents);

    std::mt19937_64 gen(seed);
    std::vector<Monomial> terms;
    for (const auto& e : exponents) {
        int total = 0;
        for (std::size_t i = 0; i < n; ++i) total += e[i];
        if (total < 1 || total > 4) continue;
        Monomial t;
        t.exp = e;
        t.coeff = 2.0 * unit_interval(gen) - 1.0;
        terms.push_back(t);
    }

    SmoothFactor factor = polynomial_factor(n, std::move(terms));
    GeneratingPerturbation unit = cutoff_product(n, rho, 1.0, factor, "random-poly");
    if (unit.delta1 == 0.0)
        throw ConfigError("make_random_poly", "degenerate coefficient draw for seed " +
                                                  std::to_string(seed));
    const double amplitude = eps / unit.delta1;
    return cutoff_product(n, rho, amplitude, factor, "random-poly");
}

GeneratingPerturbation make_family(const std::string& family, std::size_t d, double eps,
                                   double rho, std::uint64_t seed) {
    if (family == "linear-shear") return make_linear_shear(d, eps, rho);
    if (family == "cubic") return make_cubic(d, eps, rho);
    if (family == "random-poly") return make_random_poly(d, eps, rho, seed);
    throw ConfigError("make_family", "unknown family '" + family + "'");
}

Vec map_from_generator(const GeneratingPerturbation& pert, const Vec& z,
                       const NewtonSettings& settings) {
    if (!(pert.delta1 < 0.5))
        throw ContractionViolationError(
            "map_from_generator", "generator C^1 size " + std::to_string(pert.delta1) +
                                      " is not below 1/2; the implicit solve has no "
                                      "contraction margin");
    const std::size_t m = pert.dim / 2;
    Vec x(z.begin(), z.begin() + m);
    Vec y(z.begin() + m, z.end());

    auto at = [&](const Vec& xp) {
        Vec w = xp;
        for (std::size_t i = 0; i < m; ++i) w.push_back(y[i]);
        return w;
    };
    auto residual = [&](const Vec& xp) {
        Vec g = pert.grad(at(xp));
        Vec r = zeros(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = xp[i] + g[m + i] - x[i];
        return r;
    };
    auto jacobian = [&](const Vec& xp) {
        Mat h = pert.hess(at(xp));
        Mat jac = Mat::identity(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) jac(i, j) += h(m + i, j);
        return jac;
    };

    Vec xp = newton_solve(residual, JacFn(jacobian), x, settings);
    Vec gv = pert.grad(at(xp));
    Vec out = xp;
    for (std::size_t i = 0; i < m; ++i) out.push_back(y[i] + gv[i]);
    return out;
}

GeneratingPerturbation fit_generating_gradient(const std::function<Vec(const Vec&)>& g,
                                               double rho, const GridDomain& domain) {
    const std::size_t n = domain.dim;
    if (n == 0 || n % 2 != 0)
        throw ConfigError("fit_generating_gradient", "domain dimension must be even");
    const std::size_t m = n / 2;

    // Symplecticity spot check on the sample lattice before trusting g.
    std::vector<Vec> samples = grid_points(domain);
    const std::size_t stride = std::max<std::size_t>(1, samples.size() / 120);
    const Mat J = symplectic_J(n);
    for (std::size_t k = 0; k < samples.size(); k += stride) {
        const Vec& p = samples[k];
        Mat dg = fd_jacobian(g, p, 1e-5);
        Mat lhs = dg.transposed().multiply(J).multiply(dg);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                worst = std::max(worst, std::abs(lhs(i, j) - J(i, j)));
        if (!(worst <= 1e-4))
            throw InvalidMapError("fit_generating_gradient",
                                  "map fails the symplecticity check (defect " +
                                      std::to_string(worst) + " at a sample point)");
    }

    NewtonSettings settings;
    settings.tol = 1e-12;
    settings.fd_step = 1e-6;

    auto grad = [g, m, settings](const Vec& zp) {
        Vec xp(zp.begin(), zp.begin() + m);
        Vec y(zp.begin() + m, zp.end());
        auto residual = [&](const Vec& x) {
            Vec w = x;
            for (std::size_t i = 0; i < m; ++i) w.push_back(y[i]);
            Vec gw = g(w);
            Vec r = zeros(m);
            for (std::size_t i = 0; i < m; ++i) r[i] = gw[i] - xp[i];
            return r;
        };
        Vec x = newton_solve(residual, std::nullopt, xp, settings);
        Vec w = x;
        for (std::size_t i = 0; i < m; ++i) w.push_back(y[i]);
        Vec gw = g(w);
        return apply_J(sub(gw, w));
    };

    auto hess = [grad](const Vec& zp) {
        const std::size_t nn = zp.size();
        const double h = 1e-6;
        Mat out(nn, nn);
        for (std::size_t j = 0; j < nn; ++j) {
            Vec hi = zp, lo = zp;
            hi[j] += h;
            lo[j] -= h;
            Vec diff = sub(grad(hi), grad(lo));
            for (std::size_t i = 0; i < nn; ++i) out(i, j) = diff[i] / (2.0 * h);
        }
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = i + 1; j < nn; ++j) {
                const double s = 0.5 * (out(i, j) + out(j, i));
                out(i, j) = s;
                out(j, i) = s;
            }
        return out;
    };

    const double delta1 = measure_delta1(grad, n, rho);
    if (!(delta1 < 0.5))
        throw ContractionViolationError(
            "fit_generating_gradient",
            "fitted generator C^1 size " + std::to_string(delta1) + " is not below 1/2");

    // The fit only sees g inside the sample domain; probe just outside the
    // support radius to decide whether the perturbation is compact.
    bool compact = true;
    for (std::size_t axis = 0; axis < n && compact; ++axis) {
        for (double sign : {-1.0, 1.0}) {
            Vec p = zeros(n);
            p[axis] = sign * 1.05 * rho;
            if (norm_inf(grad(p)) > 1e-10) {
                compact = false;
                break;
            }
        }
    }

    GeneratingPerturbation pert;
    pert.dim = n;
    pert.rho = rho;
    pert.delta1 = delta1;
    pert.compact = compact;
    pert.family = "fitted";
    if (compact) pert.smooth_breaks = Vec{kCutoffPlateau * rho, rho};
    pert.grad = grad;
    pert.hess = hess;
    return pert;
}

} // namespace susp
