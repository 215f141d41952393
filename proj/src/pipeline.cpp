#include "susp/pipeline.hpp"

#include "susp/errors.hpp"
#include "susp/faa_di_bruno.hpp"
#include "susp/generator.hpp"
#include "susp/newton.hpp"
#include "susp/parallel.hpp"
#include "susp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace susp {
namespace {

std::string short_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

IntegratorSettings integrator_settings(const ExperimentConfig& config) {
    IntegratorSettings settings;
    settings.rel_tol = config.tol;
    settings.abs_tol = config.tol;
    return settings;
}

} // namespace

SuspendedHamiltonian build_suspension(const ExperimentConfig& config) {
    validate_config(config);
    GeneratingPerturbation pert =
        make_family(config.family, config.d, config.eps, config.rho, config.seed);
    IsotopyFamily iso(std::move(pert), config.xi);
    SuspensionSettings settings;
    settings.quad_nodes = config.quad_nodes;
    return SuspendedHamiltonian(std::move(iso), config.nu, settings);
}

std::vector<Vec> section_lattice(std::size_t d, double rho, double fraction,
                                 std::size_t per_axis) {
    const std::size_t dim = 2 * (d - 1);
    const double half = fraction * rho / std::sqrt(static_cast<double>(dim));
    std::vector<Vec> points;

    Vec cursor = zeros(dim);
    std::vector<std::size_t> idx(dim, 0);
    for (;;) {
        for (std::size_t a = 0; a < dim; ++a) {
            cursor[a] = per_axis == 1
                            ? 0.0
                            : -half + 2.0 * half * static_cast<double>(idx[a]) /
                                          static_cast<double>(per_axis - 1);
        }
        points.push_back(cursor);
        std::size_t a = 0;
        while (a < dim && ++idx[a] == per_axis) {
            idx[a] = 0;
            ++a;
        }
        if (a == dim) break;
    }
    return points;
}

SuspensionRun run_suspension(const ExperimentConfig& config) {
    SuspensionRun run;
    run.config = config;

    const SuspendedHamiltonian susp = build_suspension(config);
    run.norms = norm_gap_report(susp, standard_norm_gap_grids(config.d, config.rho, config.xi));

    const std::vector<Vec> lattice =
        section_lattice(config.d, config.rho, config.ball_fraction, config.grid_per_axis);
    const IntegratorSettings settings = integrator_settings(config);

    run.sections = parallel_map<SectionRecord>(
        lattice.size(), config.threads,
        [&](std::size_t i) { return time_one_section_map(susp, lattice[i], settings); });

    for (const SectionRecord& rec : run.sections) {
        run.max_residual = std::max(run.max_residual, rec.residual);
        run.max_excursion = std::max(run.max_excursion, rec.excursion);
        run.max_exit_yd = std::max(run.max_exit_yd, std::abs(rec.exit_yd));
        run.max_xd_defect = std::max(run.max_xd_defect, rec.xd_defect);
    }
    return run;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    validate_config(config);
    SweepResult sweep;
    sweep.config = config;
    for (const std::string& family : config.families) {
        for (double eps : config.eps_list) {
            ExperimentConfig sub = config;
            sub.family = family;
            sub.eps = eps;
            sweep.runs.push_back(run_suspension(sub));
        }
    }
    return sweep;
}

VerificationReport run_verify(const ExperimentConfig& config) {
    validate_config(config);
    VerificationReport report;

    // A check that throws is recorded as an explicit failure naming the
    // operation, so one bad stage never hides the results of the others.
    auto guarded = [&report](const char* stage, const std::function<void()>& body) {
        try {
            body();
        } catch (const Error& e) {
            report.add(stage, 0.0, 0.0, false, e.what());
        }
    };

    // Profile certificates for the window attached to this configuration.
    guarded("window-certificate", [&] {
        const BumpCertificate cert = certify_bump_norms(window_profile(config.nu, config.rho));
        report.add("window-slope", cert.slope_estimate, cert.slope_budget, cert.slope_ok);
        report.add("window-curvature", cert.curvature_estimate, cert.curvature_budget,
                   cert.curvature_ok);
    });

    // The shear family has closed forms for everything; pin a few of them.
    guarded("shear-closed-forms", [&] {
        const double eps = 0.1;
        GeneratingPerturbation shear = make_linear_shear(2, eps, config.rho);
        Vec z{1.0, 1.0};
        Vec image = map_from_generator(shear, z);
        const double err = std::max(std::abs(image[0] - 1.0 / (1.0 + eps)),
                                    std::abs(image[1] - (1.0 + eps)));
        report.add_upper("shear-endpoint-map", err, 1e-12);

        IsotopyFamily iso(shear, config.xi);
        SuspendedHamiltonian susp(iso, config.nu);
        double worst = 0.0;
        for (double alpha : {0.1 * config.xi, 0.5 * config.xi, 0.9 * config.xi}) {
            const double l = iso.ell(alpha, 0);
            const double lp = iso.ell(alpha, 1);
            for (const Vec& pt : {Vec{0.4, 0.3}, Vec{-0.2, 0.5}}) {
                const double expect = -lp * eps * pt[0] * pt[1] / (1.0 + l * eps);
                worst = std::max(worst,
                                 std::abs(susp.slice_hamiltonian(alpha, pt) - expect));
            }
        }
        report.add_upper("shear-slice-value", worst, 1e-9);
    });

    // grad K = -J X, checked by differencing K directly.
    guarded("slice-gradient", [&] {
        const SuspendedHamiltonian susp = build_suspension(config);
        const double alpha = 0.5 * config.xi;
        double worst = 0.0;
        for (const Vec& pt :
             {Vec{0.3 * config.rho, 0.2 * config.rho}, Vec{-0.25 * config.rho, 0.35 * config.rho}}) {
            Vec lhs = apply_J_inv(susp.isotopy().field(alpha, pt));
            const double h = 1e-6 * config.rho;
            for (std::size_t i = 0; i < pt.size(); ++i) {
                Vec hi = pt, lo = pt;
                hi[i] += h;
                lo[i] -= h;
                const double fd = (susp.slice_hamiltonian(alpha, hi) -
                                   susp.slice_hamiltonian(alpha, lo)) /
                                  (2.0 * h);
                worst = std::max(worst, std::abs(fd - lhs[i]));
            }
        }
        report.add_upper("slice-gradient-field", worst, 1e-5);
    });

    // Flow diagnostics on the configured family.
    guarded("flow-diagnostics", [&] {
        const SuspendedHamiltonian susp = build_suspension(config);
        const IntegratorSettings settings = integrator_settings(config);
        const std::size_t m2 = 2 * (config.d - 1);
        const double r = 0.3 * config.rho;

        std::vector<Vec> section_points;
        for (double angle : {0.0, 2.1, 4.2}) {
            Vec sp = zeros(m2);
            sp[0] = r * std::cos(angle);
            sp[m2 - 1] = r * std::sin(angle);
            section_points.push_back(sp);
        }

        double drift = 0.0, residual = 0.0, closed = 0.0;
        for (const Vec& sp : section_points) {
            Vec state = zeros(2 * config.d);
            for (std::size_t i = 0; i + 1 < config.d; ++i) {
                state[i] = sp[i];
                state[config.d + i] = sp[config.d - 1 + i];
            }
            Trajectory traj = integrate(susp, state, 1.0, settings);
            for (double e : traj.energies) drift = std::max(drift, std::abs(e - traj.energies[0]));
            Vec direct = closed_form_flow(susp, state, 1.0);
            closed = std::max(closed, norm_inf(sub(traj.states.back(), direct)));

            SectionRecord rec = time_one_section_map(susp, sp, settings);
            residual = std::max(residual, rec.residual);
        }
        report.add_upper("energy-drift", drift, 1e-9);
        report.add_upper("section-residual", residual, 1e-6);
        report.add_upper("closed-form-flow", closed, 1e-7);
    });

    // The rise profile is exactly 1 past xi, so the endpoint map must be
    // reproduced bit for bit at any later parameter.
    guarded("endpoint-stability", [&] {
        GeneratingPerturbation pert =
            make_family(config.family, config.d, config.eps, config.rho, config.seed);
        IsotopyFamily iso(std::move(pert), config.xi);
        Vec pt = zeros(iso.dim());
        pt[0] = 0.31 * config.rho;
        pt[iso.dim() - 1] = -0.17 * config.rho;
        const double err =
            norm_inf(sub(iso.eval(0.5 * (config.xi + 1.0), pt), iso.eval(1.0, pt)));
        report.add_upper("endpoint-stability", err, 0.0);
    });

    // Chain-rule table sanity: coefficient sums are the Bell numbers.
    guarded("chain-rule-table", [&] {
        long long worst = 0;
        for (int r = 1; r <= 5; ++r) {
            long long sum = 0;
            for (const ChainRuleTerm& term : faa_di_bruno_table(r)) sum += term.coefficient;
            worst = std::max(worst, std::llabs(sum - bell_number(r)));
        }
        report.add("chain-rule-table", static_cast<double>(worst), 0.0, worst == 0);
    });

    // Quadrature rule exactness at the edge of its degree.
    guarded("quadrature-exactness", [&] {
        const std::size_t n = 16;
        auto f = [](double t) { return std::pow(2.0 * t - 1.0, 31); };
        const double err = std::abs(integrate_01(f, n) - 0.0);
        report.add_upper("quadrature-exactness", err, 1e-14);
    });

    return report;
}

std::string render_text(const SweepResult& sweep) {
    std::ostringstream out;
    out << "family        eps        max_residual  max_excursion  max_exit_yd  ratio\n";
    for (const SuspensionRun& run : sweep.runs) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-13s %-10s %-13.3e %-14.3e %-12.3e %s\n",
                      run.config.family.c_str(), short_double(run.config.eps).c_str(),
                      run.max_residual, run.max_excursion, run.max_exit_yd,
                      run.norms.degenerate ? "degenerate" : short_double(run.norms.ratio).c_str());
        out << line;
    }
    return out.str();
}

std::string run_label(const ExperimentConfig& config) {
    return config.family + "_eps" + short_double(config.eps);
}

void write_run_artifacts(const SuspensionRun& run, const std::string& out_dir) {
    const std::string base = out_dir + "/";
    write_file_atomic(base + "config.ini", render_config(run.config));
    write_file_atomic(base + "sections.csv", section_records_csv(run.sections));

    std::ostringstream text;
    text << "run " << run_label(run.config) << "\n\n"
         << render_text(run.norms) << "\nsections      = " << run.sections.size()
         << "\nmax_residual  = " << format_double(run.max_residual)
         << "\nmax_excursion = " << format_double(run.max_excursion)
         << "\nmax_exit_yd   = " << format_double(run.max_exit_yd)
         << "\nmax_xd_defect = " << format_double(run.max_xd_defect) << "\n";
    write_file_atomic(base + "report.txt", text.str());

    nlohmann::json j;
    j["label"] = run_label(run.config);
    j["norms"] = to_json(run.norms);
    j["sections"] = run.sections.size();
    j["max_residual"] = run.max_residual;
    j["max_excursion"] = run.max_excursion;
    j["max_exit_yd"] = run.max_exit_yd;
    j["max_xd_defect"] = run.max_xd_defect;
    write_file_atomic(base + "report.json", j.dump(2) + "\n");
}

void write_sweep_artifacts(const SweepResult& sweep, const std::string& out_dir) {
    const std::string base = out_dir + "/";
    write_file_atomic(base + "config.ini", render_config(sweep.config));
    write_file_atomic(base + "summary.txt", render_text(sweep));

    nlohmann::json entries = nlohmann::json::array();
    std::ostringstream csv;
    csv << "family,eps,rho,nu,deviation_c2,map_c1,map_c3,bracket,ratio,degenerate,"
           "max_residual,max_excursion,max_exit_yd,max_xd_defect\n";
    for (const SuspensionRun& run : sweep.runs) {
        write_file_atomic(base + "sections_" + run_label(run.config) + ".csv",
                          section_records_csv(run.sections));
        entries.push_back({{"label", run_label(run.config)},
                           {"family", run.config.family},
                           {"eps", run.config.eps},
                           {"norms", to_json(run.norms)},
                           {"max_residual", run.max_residual},
                           {"max_excursion", run.max_excursion},
                           {"max_exit_yd", run.max_exit_yd},
                           {"max_xd_defect", run.max_xd_defect}});
        csv << run.config.family << "," << format_double(run.config.eps) << ","
            << format_double(run.config.rho) << "," << format_double(run.config.nu) << ","
            << format_double(run.norms.deviation_c2) << "," << format_double(run.norms.map_c1)
            << "," << format_double(run.norms.map_c3) << "," << format_double(run.norms.bracket)
            << "," << format_double(run.norms.ratio) << "," << (run.norms.degenerate ? 1 : 0)
            << "," << format_double(run.max_residual) << "," << format_double(run.max_excursion)
            << "," << format_double(run.max_exit_yd) << "," << format_double(run.max_xd_defect)
            << "\n";
    }
    write_file_atomic(base + "sweep.csv", csv.str());
    write_file_atomic(base + "summary.json", nlohmann::json{{"runs", entries}}.dump(2) + "\n");
}

} // namespace susp
