#pragma once

#include "susp/integrate.hpp"
#include "susp/suspension.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace susp {

/// One named check: a measured value against its bound.  `pass` is stored
/// rather than recomputed so a check can use its own comparison direction.
struct CheckLine {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string note;
};

struct VerificationReport {
    std::vector<CheckLine> checks;

    bool all_pass() const;
    void add(std::string name, double measured, double bound, bool pass, std::string note = "");
    /// Convenience for upper-bound checks (measured <= bound).
    void add_upper(std::string name, double measured, double bound, std::string note = "");
};

/// Shortest round-trippable decimal form of a double (printf %.17g trimmed
/// is not; 17 significant digits always round-trip, so that is what we use).
std::string format_double(double value);

std::string render_text(const VerificationReport& report);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const NormGapReport& report);
std::string render_text(const NormGapReport& report);

std::string section_records_csv(const std::vector<SectionRecord>& records);
std::string trajectory_csv(const Trajectory& trajectory);

/// Writes content to path via a temporary file and rename, so readers never
/// observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace susp
