#ifndef ROUTER_CONFIG_HPP
#define ROUTER_CONFIG_HPP

// Scenario files and flag overrides.
//
// A scenario file is UTF-8 text with one `key = value` per line; `#` starts a
// comment. Keys use the long flag names with '_' or '-' (gamma_c, gamma-c).
// Recognised keys:
//   case            single | two | three
//   gamma1 gamma2 gamma_c delta phi theta theta_prime mean_n   numbers
//   omega0_detuning bandwidth (alias Omega)                   numbers
//   points          odd integer >= 2001
//   var start stop count         primary sweep axis
//   var2 start2 stop2 count2     optional inner sweep axis
// Unknown keys are rejected. Later entries override earlier ones, so flags
// applied after the file win.

#include "router/scenario.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace router {

struct SettingEntry {
    std::string key;
    std::string value;
    std::string origin;  // "path:line" or "--flag"
};

struct Settings {
    Scenario scenario;
    std::optional<SweepVariable> var;
    double start = 0;
    double stop = 6.283185307179586;
    int count = 101;
    std::optional<SweepVariable> var2;
    double start2 = 0;
    double stop2 = 6.283185307179586;
    int count2 = 101;

    /// Throws InvalidArgument when no sweep variable was given.
    SweepSpec sweep_spec() const;
};

std::vector<SettingEntry> parse_config(std::istream &in, const std::string &source);

/// Throws InvalidArgument when the file cannot be read or a line is malformed.
std::vector<SettingEntry> load_config(const std::string &path);

/// Applies entries in order. Throws InvalidArgument naming the origin and key
/// for unknown keys or unparsable values.
void apply_settings(Settings &settings, const std::vector<SettingEntry> &entries);

/// Canonical key spelling: lower-case flag name with '_' separators.
std::string normalize_key(std::string key);

}  // namespace router

#endif  // ROUTER_CONFIG_HPP
