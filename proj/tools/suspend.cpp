#include "susp/config.hpp"
#include "susp/errors.hpp"
#include "susp/integrate.hpp"
#include "susp/pipeline.hpp"
#include "susp/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

namespace {

struct CommonOptions {
    std::string config_path;
    std::string family;
    double eps = 0.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tol = 0.0;
    std::size_t threads = 0;
    bool threads_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-c,--config", opts.config_path, "INI configuration file");
    cmd->add_option("--family", opts.family, "override the generator family");
    cmd->add_option("--eps", opts.eps, "override the perturbation size");
    cmd->add_option("--seed", opts.seed, "override the random-poly seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--tol", opts.tol, "override the integrator tolerance");
    cmd->add_option("--threads", opts.threads, "worker threads (0 = all hardware threads)")
        ->each([&opts](const std::string&) { opts.threads_set = true; });
}

susp::ExperimentConfig resolve_config(const CommonOptions& opts) {
    susp::ExperimentConfig config;
    if (!opts.config_path.empty()) config = susp::load_config(opts.config_path);
    if (!opts.family.empty()) config.family = opts.family;
    if (opts.eps > 0.0) config.eps = opts.eps;
    if (opts.seed_set) config.seed = opts.seed;
    if (opts.tol > 0.0) config.tol = opts.tol;
    if (opts.threads_set) config.threads = opts.threads;
    susp::validate_config(config);
    return config;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw susp::ConfigError("ensure_dir", "cannot create " + dir + ": " + ec.message());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Builds autonomous Hamiltonians whose time-one flow realizes a near-identity "
                 "section map, and checks them against closed forms"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string out_dir = "out";
    bool quiet = false;

    CLI::App* cmd_suspend =
        app.add_subcommand("suspend", "one run: measured norms plus a section-lattice flow");
    add_common(cmd_suspend, opts);
    cmd_suspend->add_option("-o,--out", out_dir, "output directory");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "families x eps sweep of suspend runs");
    add_common(cmd_sweep, opts);
    cmd_sweep->add_option("-o,--out", out_dir, "output directory");

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "deterministic self-checks against closed forms");
    add_common(cmd_verify, opts);
    cmd_verify->add_option("-o,--out", out_dir, "also write report files here");
    cmd_verify->add_flag("-q,--quiet", quiet, "print only the final verdict line");
    bool verify_writes = false;
    cmd_verify->get_option("-o")->each([&verify_writes](const std::string&) {
        verify_writes = true;
    });

    CLI::App* cmd_norms =
        app.add_subcommand("norms", "print the measured-norms report for one configuration");
    add_common(cmd_norms, opts);

    CLI::App* cmd_demo = app.add_subcommand("demo", "flow one section point and print the result");
    add_common(cmd_demo, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_suspend->parsed()) {
            const susp::ExperimentConfig config = resolve_config(opts);
            const susp::SuspensionRun run = susp::run_suspension(config);
            ensure_dir(out_dir);
            susp::write_run_artifacts(run, out_dir);
            std::cout << "run " << susp::run_label(config) << ": " << run.sections.size()
                      << " sections, max residual " << susp::format_double(run.max_residual)
                      << ", artifacts in " << out_dir << "\n";
            return 0;
        }
        if (cmd_sweep->parsed()) {
            const susp::ExperimentConfig config = resolve_config(opts);
            const susp::SweepResult sweep = susp::run_sweep(config);
            ensure_dir(out_dir);
            susp::write_sweep_artifacts(sweep, out_dir);
            std::cout << susp::render_text(sweep);
            std::cout << "artifacts in " << out_dir << "\n";
            return 0;
        }
        if (cmd_verify->parsed()) {
            const susp::ExperimentConfig config = resolve_config(opts);
            const susp::VerificationReport report = susp::run_verify(config);
            const std::string text = susp::render_text(report);
            if (quiet) {
                std::cout << (report.all_pass() ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
            } else {
                std::cout << text;
            }
            if (verify_writes) {
                ensure_dir(out_dir);
                susp::write_file_atomic(out_dir + "/verify.txt", text);
                susp::write_file_atomic(out_dir + "/verify.json",
                                        susp::to_json(report).dump(2) + "\n");
            }
            return report.all_pass() ? 0 : 1;
        }
        if (cmd_norms->parsed()) {
            const susp::ExperimentConfig config = resolve_config(opts);
            const susp::SuspendedHamiltonian susp_h = susp::build_suspension(config);
            const susp::NormGapReport norms = susp::norm_gap_report(
                susp_h, susp::standard_norm_gap_grids(config.d, config.rho, config.xi));
            std::cout << susp::render_text(norms);
            return 0;
        }
        if (cmd_demo->parsed()) {
            const susp::ExperimentConfig config = resolve_config(opts);
            const susp::SuspendedHamiltonian susp_h = susp::build_suspension(config);
            susp::Vec point = susp::zeros(2 * (config.d - 1));
            point[0] = 0.3 * config.rho;
            point[point.size() - 1] = -0.2 * config.rho;
            susp::IntegratorSettings settings;
            settings.rel_tol = settings.abs_tol = config.tol;
            const susp::SectionRecord rec =
                susp::time_one_section_map(susp_h, point, settings);
            std::cout << "family      " << config.family << " (eps " << config.eps << ")\n"
                      << "input      ";
            for (double v : rec.input) std::cout << " " << susp::format_double(v);
            std::cout << "\noutput     ";
            for (double v : rec.output) std::cout << " " << susp::format_double(v);
            std::cout << "\nresidual    " << susp::format_double(rec.residual) << "\n"
                      << "excursion   " << susp::format_double(rec.excursion) << "\n"
                      << "exit y_d    " << susp::format_double(rec.exit_yd) << "\n";
            return 0;
        }
    } catch (const susp::Error& err) {
        std::cerr << "error in " << err.operation() << ": " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
