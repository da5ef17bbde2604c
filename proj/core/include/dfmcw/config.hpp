#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "dfmcw/params.hpp"

namespace dfmcw {

/// One `key = value` entry of a config file.
struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;  // 0 for entries that did not come from a file (overrides)
};

/// Parses the line-oriented config grammar:
///
///     # comment
///     key = value      # trailing comment
///
/// Blank lines are ignored, keys and values are trimmed. A line without `=`,
/// an empty key or an empty value is a ConfigError.
std::vector<ConfigEntry> parse_config(std::istream& in);
std::vector<ConfigEntry> parse_config_text(std::string_view text);

/// Splits a `KEY=VALUE` command-line override.
ConfigEntry parse_override(std::string_view assignment);

/// Applies one entry to a SystemConfig. Returns false when the key is not a
/// system parameter (so callers may layer their own keys on top); throws
/// ConfigError when the key is known but the value does not parse.
///
/// Recognised keys, SI units unless suffixed:
///   f_c, f_c_ghz, B_c, B_c_ghz, r_res, a, r_max, v_max, v_max_kmps,
///   zero_pad_factor, nyquist_factor, carrier_correction (paper|exact),
///   transition_fit (literal_clamped), peak_interpolation (true|false),
///   master_seed
bool apply_system_key(SystemConfig& config, const ConfigEntry& entry);

double parse_double(const ConfigEntry& entry);
std::int64_t parse_int(const ConfigEntry& entry);
std::uint64_t parse_u64(const ConfigEntry& entry);
bool parse_bool(const ConfigEntry& entry);
/// Comma-separated list of doubles, or `start:step:stop` (inclusive).
std::vector<double> parse_double_list(const ConfigEntry& entry);

}  // namespace dfmcw
