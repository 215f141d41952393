#include "susp/integrate.hpp"

#include "susp/errors.hpp"
#include "susp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace susp {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA2[] = {1.0 / 5};
constexpr double kA3[] = {3.0 / 40, 9.0 / 40};
constexpr double kA4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr double kA5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
constexpr double kA6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                          -5103.0 / 18656};
constexpr double kB[7] = {35.0 / 384,  0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                          11.0 / 84,   0.0};
constexpr double kBhat[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                             -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

// Dense-output weights for the quartic interpolant.
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

Vec axpy(const Vec& base, double h, const Vec& k) {
    Vec r = base;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += h * k[i];
    return r;
}

struct DenseCoeffs {
    Vec r1, r2, r3, r4, r5;

    Vec at(double theta) const {
        const double omt = 1.0 - theta;
        Vec out = r1;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += theta * (r2[i] + omt * (r3[i] + theta * (r4[i] + omt * r5[i])));
        return out;
    }
};

DenseCoeffs dense_coeffs(const Vec& y0, const Vec& y1, double h, const Vec k[7]) {
    DenseCoeffs c;
    c.r1 = y0;
    c.r2 = sub(y1, y0);
    c.r3 = sub(scale(k[0], h), c.r2);
    c.r4 = sub(sub(c.r2, scale(k[6], h)), c.r3);
    c.r5 = zeros(y0.size());
    const double w[7] = {kD1, 0.0, kD3, kD4, kD5, kD6, kD7};
    for (int s = 0; s < 7; ++s) {
        if (w[s] == 0.0) continue;
        for (std::size_t i = 0; i < c.r5.size(); ++i) c.r5[i] += h * w[s] * k[s][i];
    }
    return c;
}

} // namespace

bool ChartBox::contains(const Vec& state, std::size_t d) const {
    for (std::size_t i = 0; i + 1 < d; ++i) {
        if (std::abs(state[i]) > section_halfwidth) return false;
        if (std::abs(state[d + i]) > section_halfwidth) return false;
    }
    if (state[d - 1] < xd_lo || state[d - 1] > xd_hi) return false;
    if (std::abs(state[2 * d - 1]) > yd_halfwidth) return false;
    return true;
}

ChartBox default_chart_box(const SuspendedHamiltonian& susp) {
    ChartBox box;
    box.section_halfwidth = 2.0 * susp.rho();
    box.yd_halfwidth = susp.rho();
    return box;
}

Trajectory integrate(const SuspendedHamiltonian& susp, const Vec& state0, double t1,
                     const IntegratorSettings& settings) {
    if (state0.size() != 2 * susp.d())
        throw ConfigError("integrate", "state length does not match the suspension dimension");
    if (!(t1 > 0.0)) throw ConfigError("integrate", "integration span must be positive");

    const ChartBox box = default_chart_box(susp);
    const std::size_t d = susp.d();
    if (!box.contains(state0, d))
        throw DomainExitError("integrate", "initial state outside the chart box",
                              std::vector<double>(state0.begin(), state0.end()), 0.0);

    Trajectory traj;
    auto record = [&](double t, const Vec& y) {
        traj.times.push_back(t);
        traj.states.push_back(y);
        traj.energies.push_back(susp.value(y));
        traj.excursion = std::max(traj.excursion, std::abs(y[2 * d - 1]));
    };
    auto rhs = [&](const Vec& y) {
        ++traj.rhs_evals;
        return susp.field(y);
    };

    const double max_step = settings.max_step > 0.0 ? settings.max_step : 0.1 * t1;
    double t = 0.0;
    double h = std::min(max_step, 1e-2 * t1);
    Vec y = state0;
    Vec k[7];
    k[0] = rhs(y);
    record(0.0, y);

    while (t < t1) {
        if (traj.accepted + traj.rejected >= settings.max_steps)
            throw StiffnessError("integrate", "step budget exhausted at t = " + std::to_string(t));
        bool final_step = false;
        if (h >= t1 - t - settings.min_step) {
            h = t1 - t;
            final_step = true;
        }
        if (h < settings.min_step)
            throw StiffnessError("integrate", "step size collapsed to " + std::to_string(h) +
                                                  " at t = " + std::to_string(t));

        k[1] = rhs(axpy(y, h * kA2[0], k[0]));
        Vec stage = y;
        for (int s = 0; s < 2; ++s) stage = axpy(stage, h * kA3[s], k[s]);
        k[2] = rhs(stage);
        stage = y;
        for (int s = 0; s < 3; ++s) stage = axpy(stage, h * kA4[s], k[s]);
        k[3] = rhs(stage);
        stage = y;
        for (int s = 0; s < 4; ++s) stage = axpy(stage, h * kA5[s], k[s]);
        k[4] = rhs(stage);
        stage = y;
        for (int s = 0; s < 5; ++s) stage = axpy(stage, h * kA6[s], k[s]);
        k[5] = rhs(stage);

        Vec ynew = y;
        for (int s = 0; s < 6; ++s)
            if (kB[s] != 0.0) ynew = axpy(ynew, h * kB[s], k[s]);
        k[6] = rhs(ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            double e = 0.0;
            for (int s = 0; s < 7; ++s) e += (kB[s] - kBhat[s]) * k[s][i];
            e *= h;
            const double sc =
                settings.abs_tol + settings.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(y.size()));

        if (err <= 1.0) {
            const DenseCoeffs dense = dense_coeffs(y, ynew, h, k);
            for (std::size_t j = 1; j <= settings.dense_per_step; ++j) {
                const double theta =
                    static_cast<double>(j) / static_cast<double>(settings.dense_per_step + 1);
                Vec mid = dense.at(theta);
                traj.excursion = std::max(traj.excursion, std::abs(mid[2 * d - 1]));
                if (!box.contains(mid, d))
                    throw DomainExitError("integrate", "trajectory left the chart box",
                                          std::vector<double>(y.begin(), y.end()), t);
            }
            if (!box.contains(ynew, d))
                throw DomainExitError("integrate", "trajectory left the chart box",
                                      std::vector<double>(y.begin(), y.end()), t);
            t = final_step ? t1 : t + h;
            y = ynew;
            k[0] = k[6];
            ++traj.accepted;
            record(t, y);
            const double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            h = std::min(max_step, h * std::clamp(grow, 0.2, 5.0));
        } else {
            ++traj.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
        }
    }
    return traj;
}

Vec flow_state(const SuspendedHamiltonian& susp, const Vec& state0, double t1,
               const IntegratorSettings& settings) {
    return integrate(susp, state0, t1, settings).states.back();
}

Vec integrate_fixed_order8(const SuspendedHamiltonian& susp, const Vec& state0, double t1,
                           std::size_t macro_steps) {
    if (macro_steps == 0) throw ConfigError("integrate_fixed_order8", "need at least one step");
    const int seq[4] = {2, 4, 6, 8};
    const double big_h = t1 / static_cast<double>(macro_steps);

    auto midpoint = [&susp](const Vec& y0, double span, int n) {
        const double h = span / n;
        Vec zprev = y0;
        Vec z = axpy(y0, h, susp.field(y0));
        for (int k = 1; k < n; ++k) {
            Vec znext = axpy(zprev, 2.0 * h, susp.field(z));
            zprev = z;
            z = znext;
        }
        Vec out = axpy(z, h, susp.field(z));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (out[i] + zprev[i]);
        return out;
    };

    Vec y = state0;
    for (std::size_t step = 0; step < macro_steps; ++step) {
        // Aitken-Neville extrapolation in the squared substep size.
        Vec table[4][4];
        for (int j = 0; j < 4; ++j) {
            table[j][0] = midpoint(y, big_h, seq[j]);
            for (int k = 1; k <= j; ++k) {
                const double r = static_cast<double>(seq[j]) / static_cast<double>(seq[j - k]);
                const double denom = r * r - 1.0;
                table[j][k] = table[j][k - 1];
                for (std::size_t i = 0; i < table[j][k].size(); ++i)
                    table[j][k][i] += (table[j][k - 1][i] - table[j - 1][k - 1][i]) / denom;
            }
        }
        y = table[3][3];
    }
    return y;
}

SectionRecord time_one_section_map(const SuspendedHamiltonian& susp, const Vec& section_point,
                                   const IntegratorSettings& settings) {
    const std::size_t d = susp.d();
    if (section_point.size() != 2 * (d - 1))
        throw ConfigError("time_one_section_map", "section point has the wrong dimension");

    Vec state = zeros(2 * d);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        state[i] = section_point[i];
        state[d + i] = section_point[d - 1 + i];
    }

    Trajectory traj = integrate(susp, state, 1.0, settings);
    const Vec& exit = traj.states.back();

    SectionRecord rec;
    rec.input = section_point;
    rec.exit_state = exit;
    for (std::size_t i = 0; i + 1 < d; ++i) rec.output.push_back(exit[i]);
    for (std::size_t i = 0; i + 1 < d; ++i) rec.output.push_back(exit[d + i]);
    rec.exit_yd = exit[2 * d - 1];
    rec.xd_defect = std::abs(exit[d - 1] - 1.0);
    rec.excursion = traj.excursion;
    rec.residual = norm_inf(sub(rec.output, susp.isotopy().eval(1.0, section_point)));
    return rec;
}

Vec closed_form_flow(const SuspendedHamiltonian& susp, const Vec& state0, double t) {
    const std::size_t d = susp.d();
    if (state0.size() != 2 * d)
        throw ConfigError("closed_form_flow", "state length does not match the suspension");
    const double xd = state0[d - 1];
    const double yd = state0[2 * d - 1];
    if (t < 0.0 || xd < -1e-12 || xd + t > 1.0 + 1e-12)
        throw ConfigError("closed_form_flow", "x_d span must stay inside [0, 1]");
    const BumpProfile& window = susp.window();
    const double plateau = window.nu * window.rho;
    if (std::abs(yd) > plateau)
        throw ConfigError("closed_form_flow", "state starts off the window plateau");

    Vec z;
    for (std::size_t i = 0; i + 1 < d; ++i) z.push_back(state0[i]);
    for (std::size_t i = 0; i + 1 < d; ++i) z.push_back(state0[d + i]);

    const IsotopyFamily& iso = susp.isotopy();
    Vec w = iso.inverse(xd, z);
    Vec z_out = iso.eval(xd + t, w);

    // On the plateau x_d advances at unit speed, the section part rides the
    // isotopy, and the value y_d + K(x_d, z) is conserved, so the y_d
    // update is a difference of two K evaluations: the spatial part of
    // dK/dt along the ride is <grad K, J grad K> = 0, which telescopes the
    // alpha-derivative integral exactly.
    const double k_in = susp.slice_hamiltonian(xd, z);
    const double k_out = susp.slice_hamiltonian(xd + t, z_out);

    Vec out = zeros(2 * d);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        out[i] = z_out[i];
        out[d + i] = z_out[d - 1 + i];
    }
    out[d - 1] = xd + t;
    out[2 * d - 1] = yd + k_in - k_out;

    if (std::abs(out[2 * d - 1]) > plateau)
        throw DomainExitError("closed_form_flow", "flow left the window plateau",
                              std::vector<double>(out.begin(), out.end()), t);
    return out;
}

} // namespace susp
