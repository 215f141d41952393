#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "susp/errors.hpp"
#include "susp/pipeline.hpp"

using namespace susp;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig config;
    config.family = "cubic";
    config.eps = 0.01;
    config.grid_per_axis = 3;
    return config;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("section lattice: count, bounds and order are fixed") {
    std::vector<Vec> pts = section_lattice(2, 1.0, 0.5, 10);
    REQUIRE(pts.size() == 100);
    const double halfwidth = 0.5 / std::sqrt(2.0);
    for (const Vec& p : pts) {
        REQUIRE(p.size() == 2);
        CHECK(std::abs(p[0]) <= halfwidth + 1e-12);
        CHECK(std::abs(p[1]) <= halfwidth + 1e-12);
        CHECK(norm2(p) <= 0.5 + 1e-12);
    }
    // odometer order: first point at the low corner, last at the high corner
    CHECK(pts.front()[0] == doctest::Approx(-halfwidth));
    CHECK(pts.front()[1] == doctest::Approx(-halfwidth));
    CHECK(pts.back()[0] == doctest::Approx(halfwidth));
    CHECK(pts.back()[1] == doctest::Approx(halfwidth));

    std::vector<Vec> again = section_lattice(2, 1.0, 0.5, 10);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(norm_inf(sub(pts[i], again[i])) == 0.0);

    CHECK(section_lattice(3, 1.0, 0.5, 3).size() == 81); // 3^4
}

TEST_CASE("build_suspension wires the config through") {
    ExperimentConfig config = tiny_config();
    config.rho = 2.0;
    config.nu = 0.25;
    SuspendedHamiltonian susp = build_suspension(config);
    CHECK(susp.d() == 2);
    CHECK(susp.rho() == 2.0);
    CHECK(susp.window().nu == 0.25);
    CHECK(susp.isotopy().perturbation().family == "cubic");
    CHECK(susp.isotopy().perturbation().delta1 == doctest::Approx(0.01).epsilon(1e-10));
}

TEST_CASE("run_suspension aggregates honestly on a tiny lattice") {
    SuspensionRun run = run_suspension(tiny_config());
    REQUIRE(run.sections.size() == 9);
    double residual = 0.0, excursion = 0.0;
    for (const SectionRecord& rec : run.sections) {
        residual = std::max(residual, rec.residual);
        excursion = std::max(excursion, rec.excursion);
    }
    CHECK(run.max_residual == residual);
    CHECK(run.max_excursion == excursion);
    CHECK(run.max_residual < 1e-8);
    CHECK(run.max_exit_yd < 1e-8);
    CHECK(run.max_xd_defect < 1e-10);
    CHECK_FALSE(run.norms.degenerate);
}

TEST_CASE("zero perturbation run is clean and flagged degenerate") {
    ExperimentConfig config = tiny_config();
    config.eps = 0.0;
    SuspensionRun run = run_suspension(config);
    CHECK(run.norms.degenerate);
    CHECK(run.max_residual < 1e-12);
    CHECK(run.max_excursion == 0.0);
    CHECK(run.max_exit_yd < 1e-12);
}

TEST_CASE("contraction violation surfaces from the pipeline") {
    ExperimentConfig config = tiny_config();
    config.eps = 0.6;
    CHECK_THROWS_AS(run_suspension(config), ContractionViolationError);
}

TEST_CASE("run_verify passes on defaults and is deterministic") {
    ExperimentConfig config;
    VerificationReport a = run_verify(config);
    CHECK(a.all_pass());
    CHECK(a.checks.size() >= 11);
    VerificationReport b = run_verify(config);
    CHECK(render_text(a) == render_text(b));
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("run_verify flags an unresolvable window instead of dying") {
    ExperimentConfig config;
    config.nu = 0.9999;
    VerificationReport report = run_verify(config);
    CHECK_FALSE(report.all_pass());
    bool flagged = false;
    for (const CheckLine& check : report.checks) {
        if (check.name == "window-certificate") {
            flagged = true;
            CHECK_FALSE(check.pass);
            CHECK(check.note.find("certify_bump_norms") != std::string::npos);
        }
    }
    CHECK(flagged);
}

TEST_CASE("run_label is filename-friendly") {
    ExperimentConfig config = tiny_config();
    CHECK(run_label(config) == "cubic_eps0.01");
    config.family = "linear-shear";
    config.eps = 0.1;
    CHECK(run_label(config) == "linear-shear_eps0.1");
}

TEST_CASE("sweep covers families x eps in config order") {
    ExperimentConfig config = tiny_config();
    config.families = {"linear-shear", "cubic"};
    config.eps_list = {0.01, 0.02};
    SweepResult sweep = run_sweep(config);
    REQUIRE(sweep.runs.size() == 4);
    CHECK(sweep.runs[0].config.family == "linear-shear");
    CHECK(sweep.runs[0].config.eps == 0.01);
    CHECK(sweep.runs[1].config.eps == 0.02);
    CHECK(sweep.runs[2].config.family == "cubic");
    std::string table = render_text(sweep);
    CHECK(table.find("linear-shear") != std::string::npos);
    CHECK(table.find("cubic") != std::string::npos);
}

TEST_CASE("artifacts land on disk and parse back") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "susp_test_artifacts";
    fs::remove_all(dir);
    fs::create_directories(dir);

    SuspensionRun run = run_suspension(tiny_config());
    write_run_artifacts(run, dir.string());

    CHECK(fs::exists(dir / "config.ini"));
    CHECK(fs::exists(dir / "report.txt"));
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "sections.csv"));

    // the echoed config reproduces the run's configuration
    ExperimentConfig echoed = load_config((dir / "config.ini").string());
    CHECK(echoed.family == "cubic");
    CHECK(echoed.eps == 0.01);
    CHECK(echoed.grid_per_axis == 3);

    // CSV has one header plus one line per section record
    std::string csv = slurp(dir / "sections.csv");
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + run.sections.size());

    // JSON is well-formed and repeats the aggregates
    nlohmann::json j = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(j["max_residual"].get<double>() == run.max_residual);
    CHECK(j["sections"].get<std::size_t>() == run.sections.size());

    fs::remove_all(dir);
}

TEST_CASE("sweep artifacts include the plotting table") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "susp_test_sweep";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ExperimentConfig config = tiny_config();
    config.families = {"cubic"};
    config.eps_list = {0.01};
    SweepResult sweep = run_sweep(config);
    write_sweep_artifacts(sweep, dir.string());

    CHECK(fs::exists(dir / "summary.txt"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "sweep.csv"));
    CHECK(fs::exists(dir / "sections_cubic_eps0.01.csv"));

    std::string csv = slurp(dir / "sweep.csv");
    CHECK(csv.find("family,eps,rho,nu,deviation_c2") == 0);
    CHECK(csv.find("cubic,0.01") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("byte determinism of rendered artifacts") {
    SuspensionRun a = run_suspension(tiny_config());
    SuspensionRun b = run_suspension(tiny_config());
    CHECK(section_records_csv(a.sections) == section_records_csv(b.sections));
    CHECK(render_text(a.norms) == render_text(b.norms));
}
