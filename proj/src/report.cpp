#include "susp/report.hpp"

#include "susp/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace susp {

bool VerificationReport::all_pass() const {
    for (const CheckLine& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerificationReport::add(std::string name, double measured, double bound, bool pass,
                             std::string note) {
    checks.push_back(CheckLine{std::move(name), measured, bound, pass, std::move(note)});
}

void VerificationReport::add_upper(std::string name, double measured, double bound,
                                   std::string note) {
    const bool pass = measured <= bound;
    add(std::move(name), measured, bound, pass, std::move(note));
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string render_text(const VerificationReport& report) {
    std::ostringstream out;
    for (const CheckLine& c : report.checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  measured="
            << format_double(c.measured) << "  bound=" << format_double(c.bound);
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << "\n";
    }
    out << (report.all_pass() ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
    return out.str();
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckLine& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"measured", c.measured},
                          {"bound", c.bound},
                          {"pass", c.pass},
                          {"note", c.note}});
    }
    return {{"checks", checks}, {"all_pass", report.all_pass()}};
}

nlohmann::json to_json(const NormGapReport& report) {
    return {{"deviation_c2", report.deviation_c2}, {"map_c1", report.map_c1},
            {"map_c3", report.map_c3},             {"bracket", report.bracket},
            {"ratio", report.ratio},               {"degenerate", report.degenerate}};
}

std::string render_text(const NormGapReport& report) {
    std::ostringstream out;
    out << "deviation_c2 = " << format_double(report.deviation_c2) << "\n"
        << "map_c1       = " << format_double(report.map_c1) << "\n"
        << "map_c3       = " << format_double(report.map_c3) << "\n"
        << "bracket      = " << format_double(report.bracket) << "\n";
    if (report.degenerate)
        out << "ratio        = degenerate (identity endpoint map)\n";
    else
        out << "ratio        = " << format_double(report.ratio) << "\n";
    return out.str();
}

std::string section_records_csv(const std::vector<SectionRecord>& records) {
    std::ostringstream out;
    out << "index";
    if (!records.empty()) {
        const std::size_t m2 = records.front().input.size();
        for (std::size_t i = 0; i < m2; ++i) out << ",in_" << i;
        for (std::size_t i = 0; i < m2; ++i) out << ",out_" << i;
    }
    out << ",exit_yd,xd_defect,excursion,residual\n";
    for (std::size_t r = 0; r < records.size(); ++r) {
        const SectionRecord& rec = records[r];
        out << r;
        for (double v : rec.input) out << "," << format_double(v);
        for (double v : rec.output) out << "," << format_double(v);
        out << "," << format_double(rec.exit_yd) << "," << format_double(rec.xd_defect) << ","
            << format_double(rec.excursion) << "," << format_double(rec.residual) << "\n";
    }
    return out.str();
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << "t";
    const std::size_t n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
    for (std::size_t i = 0; i < n; ++i) out << ",z_" << i;
    out << ",energy\n";
    for (std::size_t r = 0; r < trajectory.times.size(); ++r) {
        out << format_double(trajectory.times[r]);
        for (double v : trajectory.states[r]) out << "," << format_double(v);
        out << "," << format_double(trajectory.energies[r]) << "\n";
    }
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("write_file_atomic", "cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw ConfigError("write_file_atomic", "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ConfigError("write_file_atomic", "rename to " + path + " failed");
}

} // namespace susp
