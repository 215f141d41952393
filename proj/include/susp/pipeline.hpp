#pragma once

#include "susp/config.hpp"
#include "susp/integrate.hpp"
#include "susp/report.hpp"
#include "susp/suspension.hpp"

#include <string>
#include <vector>

namespace susp {

/// Builds the suspension described by a configuration (family, eps, rho,
/// profile shape parameters).
SuspendedHamiltonian build_suspension(const ExperimentConfig& config);

/// Section points of an axis-aligned lattice with per_axis points per axis
/// over the cube inscribed in the ball of radius fraction * rho, in a fixed
/// deterministic order.  Inscribing keeps every lattice point inside the
/// ball, so the count is exactly per_axis^(2(d-1)).
std::vector<Vec> section_lattice(std::size_t d, double rho, double fraction,
                                 std::size_t per_axis);

struct SuspensionRun {
    ExperimentConfig config;
    NormGapReport norms;
    std::vector<SectionRecord> sections;
    double max_residual = 0.0;
    double max_excursion = 0.0;
    double max_exit_yd = 0.0;
    double max_xd_defect = 0.0;
};

/// One full run: build, measure norms, flow a section lattice through the
/// block.  Section maps run on the worker pool; results are index-ordered,
/// so the artifacts do not depend on thread scheduling.
SuspensionRun run_suspension(const ExperimentConfig& config);

struct SweepResult {
    ExperimentConfig config;
    std::vector<SuspensionRun> runs; // families x eps_list, in config order
};

SweepResult run_sweep(const ExperimentConfig& config);

/// Deterministic self-checks against closed forms and conserved quantities.
/// Runs in seconds; the output contains no timestamps or machine state, so
/// repeated runs are byte-identical.
VerificationReport run_verify(const ExperimentConfig& config);

std::string render_text(const SweepResult& sweep);

/// Short label like "cubic_eps0.05" used in artifact filenames.
std::string run_label(const ExperimentConfig& config);

/// Writes run artifacts (report text, JSON, CSVs) under `out_dir`, which
/// must already exist.
void write_run_artifacts(const SuspensionRun& run, const std::string& out_dir);
void write_sweep_artifacts(const SweepResult& sweep, const std::string& out_dir);

} // namespace susp
