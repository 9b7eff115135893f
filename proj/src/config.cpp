#include "gwv/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gwv {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_double(const std::string& value, int line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("config line " + std::to_string(line_no) + ": invalid number '" +
                          value + "'");
    return v;
}

long parse_long(const std::string& value, int line_no) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("config line " + std::to_string(line_no) + ": invalid integer '" +
                          value + "'");
    return v;
}

}  // namespace

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key or value");

        if (key == "units") {
            if (value != "natural" && value != "si")
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": units must be 'natural' or 'si'");
            base.units_preset = value;
        } else if (key == "format") {
            if (value != "csv" && value != "json")
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": format must be 'csv' or 'json'");
            base.output_format = value;
        } else if (key == "quad") {
            if (value == "adaptive")
                base.quad.method = QuadMethod::AdaptivePolar;
            else if (value == "mc")
                base.quad.method = QuadMethod::MonteCarlo;
            else
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": quad must be 'adaptive' or 'mc'");
        } else if (key == "seed") {
            base.quad.seed = static_cast<std::uint64_t>(parse_long(value, line_no));
        } else if (key == "rel_tol") {
            const double v = parse_double(value, line_no);
            if (!(v > 0.0) || !(v < 1.0))
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": rel_tol must lie in (0, 1)");
            base.quad.rel_tol = v;
        } else if (key == "max_evals") {
            const long v = parse_long(value, line_no);
            if (v < 1000)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": max_evals must be >= 1000");
            base.quad.max_evals = v;
        } else if (key == "degeneracy") {
            const long v = parse_long(value, line_no);
            if (v < 1)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": degeneracy must be >= 1");
            base.degeneracy = static_cast<int>(v);
        } else if (key == "threads") {
            const long v = parse_long(value, line_no);
            if (v < 1)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": threads must be >= 1");
            base.threads = static_cast<int>(v);
        } else if (key == "hbar" || key == "e_charge" || key == "v_f") {
            const double v = parse_double(value, line_no);
            if (!(v > 0.0))
                throw ConfigError("config line " + std::to_string(line_no) + ": " + key +
                                  " must be > 0");
            base.constant_overrides[key] = v;
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(base));
}

UnitSystem resolve_units(const RunConfig& cfg) {
    UnitSystem u = cfg.units_preset == "si" ? si_graphene_units() : natural_units();
    double hbar = u.hbar;
    double e_charge = u.e_charge;
    double v_f = u.v_f;
    if (auto it = cfg.constant_overrides.find("hbar"); it != cfg.constant_overrides.end())
        hbar = it->second;
    if (auto it = cfg.constant_overrides.find("e_charge"); it != cfg.constant_overrides.end())
        e_charge = it->second;
    if (auto it = cfg.constant_overrides.find("v_f"); it != cfg.constant_overrides.end())
        v_f = it->second;
    return make_units(hbar, e_charge, v_f);
}

}  // namespace gwv
