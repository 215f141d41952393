#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace susp {

/// Everything a batch run needs, read from a small INI file.  Parsing is
/// strict: unknown sections or keys raise ConfigError instead of being
/// ignored, so a typo cannot silently fall back to a default.
struct ExperimentConfig {
    // [model]
    std::size_t d = 2;
    std::string family = "cubic";
    double eps = 0.05;
    double rho = 1.0;
    double nu = 0.5;
    double xi = 0.5;
    std::uint64_t seed = 20240817;

    // [numerics]
    double tol = 1e-10;
    std::size_t quad_nodes = 32;

    // [sweep]
    std::vector<std::string> families = {"linear-shear", "cubic", "random-poly"};
    std::vector<double> eps_list = {0.01, 0.05};
    std::size_t grid_per_axis = 10;
    double ball_fraction = 0.5;
    std::size_t threads = 0; // 0 = one per hardware thread
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical INI echo of a configuration; parse_config(render_config(c))
/// reproduces c exactly.
std::string render_config(const ExperimentConfig& config);

/// Range checks shared by the parser and by code that builds configs
/// programmatically.
void validate_config(const ExperimentConfig& config);

} // namespace susp
