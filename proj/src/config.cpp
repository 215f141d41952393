#include "susp/config.hpp"

#include "susp/errors.hpp"
#include "susp/report.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace susp {
namespace {

std::string trim(const std::string& s) {
    const std::string ws = " \t\r\n";
    const std::size_t a = s.find_first_not_of(ws);
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("parse_config", "bad numeric value for " + key + ": '" + value + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("parse_config", "bad integer value for " + key + ": '" + value + "'");
    return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::istringstream in(value);
    std::string item;
    while (in >> item) out.push_back(item);
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("parse_config",
                                  "unterminated section header on line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "numerics" && section != "sweep")
                throw ConfigError("parse_config", "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("parse_config", "expected key = value on line " +
                                                  std::to_string(lineno) + ": '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("parse_config", "key '" + key + "' appears before any section");

        if (section == "model") {
            if (key == "d") config.d = static_cast<std::size_t>(parse_uint(key, value));
            else if (key == "family") config.family = value;
            else if (key == "eps") config.eps = parse_double(key, value);
            else if (key == "rho") config.rho = parse_double(key, value);
            else if (key == "nu") config.nu = parse_double(key, value);
            else if (key == "xi") config.xi = parse_double(key, value);
            else if (key == "seed") config.seed = parse_uint(key, value);
            else throw ConfigError("parse_config", "unknown key '" + key + "' in [model]");
        } else if (section == "numerics") {
            if (key == "tol") config.tol = parse_double(key, value);
            else if (key == "quad_nodes")
                config.quad_nodes = static_cast<std::size_t>(parse_uint(key, value));
            else throw ConfigError("parse_config", "unknown key '" + key + "' in [numerics]");
        } else {
            if (key == "families") config.families = split_list(value);
            else if (key == "eps_list") {
                config.eps_list.clear();
                for (const std::string& item : split_list(value))
                    config.eps_list.push_back(parse_double(key, item));
            } else if (key == "grid_per_axis")
                config.grid_per_axis = static_cast<std::size_t>(parse_uint(key, value));
            else if (key == "ball_fraction") config.ball_fraction = parse_double(key, value);
            else if (key == "threads")
                config.threads = static_cast<std::size_t>(parse_uint(key, value));
            else throw ConfigError("parse_config", "unknown key '" + key + "' in [sweep]");
        }
    }

    validate_config(config);
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_config", "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string render_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "[model]\n"
        << "d = " << config.d << "\n"
        << "family = " << config.family << "\n"
        << "eps = " << format_double(config.eps) << "\n"
        << "rho = " << format_double(config.rho) << "\n"
        << "nu = " << format_double(config.nu) << "\n"
        << "xi = " << format_double(config.xi) << "\n"
        << "seed = " << config.seed << "\n\n"
        << "[numerics]\n"
        << "tol = " << format_double(config.tol) << "\n"
        << "quad_nodes = " << config.quad_nodes << "\n\n"
        << "[sweep]\n"
        << "families =";
    for (const std::string& f : config.families) out << " " << f;
    out << "\n"
        << "eps_list =";
    for (double e : config.eps_list) out << " " << format_double(e);
    out << "\n"
        << "grid_per_axis = " << config.grid_per_axis << "\n"
        << "ball_fraction = " << format_double(config.ball_fraction) << "\n"
        << "threads = " << config.threads << "\n";
    return out.str();
}

void validate_config(const ExperimentConfig& config) {
    if (config.d < 2 || config.d > 4)
        throw ConfigError("validate_config", "d must be 2, 3 or 4");
    if (config.family != "linear-shear" && config.family != "cubic" &&
        config.family != "random-poly")
        throw ConfigError("validate_config", "unknown family '" + config.family + "'");
    if (!(config.eps >= 0.0)) throw ConfigError("validate_config", "eps must be nonnegative");
    if (!(config.rho > 0.0)) throw ConfigError("validate_config", "rho must be positive");
    if (!(config.nu > 0.0 && config.nu < 1.0))
        throw ConfigError("validate_config", "nu must lie in (0, 1)");
    if (!(config.xi > 0.0 && config.xi <= 1.0))
        throw ConfigError("validate_config", "xi must lie in (0, 1]");
    if (!(config.tol >= 1e-14 && config.tol <= 1e-2))
        throw ConfigError("validate_config", "tol must lie in [1e-14, 1e-2]");
    if (config.quad_nodes < 4)
        throw ConfigError("validate_config", "quad_nodes must be at least 4");
    if (config.families.empty())
        throw ConfigError("validate_config", "sweep needs at least one family");
    for (const std::string& f : config.families)
        if (f != "linear-shear" && f != "cubic" && f != "random-poly")
            throw ConfigError("validate_config", "unknown sweep family '" + f + "'");
    if (config.eps_list.empty())
        throw ConfigError("validate_config", "sweep needs at least one eps");
    for (double e : config.eps_list)
        if (!(e >= 0.0)) throw ConfigError("validate_config", "sweep eps values must be nonnegative");
    if (config.grid_per_axis < 2)
        throw ConfigError("validate_config", "grid_per_axis must be at least 2");
    if (!(config.ball_fraction > 0.0 && config.ball_fraction <= 1.0))
        throw ConfigError("validate_config", "ball_fraction must lie in (0, 1]");
}

} // namespace susp
