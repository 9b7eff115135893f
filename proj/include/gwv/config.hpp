#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "gwv/quadrature.hpp"
#include "gwv/units.hpp"

namespace gwv {

// Run-wide settings: defaults, overridden by a flat key=value config file,
// overridden in turn by explicit CLI flags.
struct RunConfig {
    std::string units_preset = "natural";  // natural | si
    std::map<std::string, double> constant_overrides;  // hbar, e_charge, v_f
    std::string output_format;  // csv | json; empty = per-subcommand default
    std::string output_path;    // empty = stdout
    QuadratureConfig quad;
    int degeneracy = 1;  // channel multiplier, applied at serialization only
    int threads = 1;
};

// Accepted keys: units, format, quad, seed, rel_tol, max_evals, degeneracy,
// threads, hbar, e_charge, v_f. Lines starting with '#' and blank lines are
// skipped. Errors carry the 1-based line number.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

// Preset selected by units_preset with constant overrides applied.
UnitSystem resolve_units(const RunConfig& cfg);

}  // namespace gwv
