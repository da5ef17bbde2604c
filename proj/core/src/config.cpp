#include "dfmcw/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace dfmcw {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const ConfigEntry& entry, std::string_view expected) {
    std::string where = entry.line > 0 ? " (line " + std::to_string(entry.line) + ")" : "";
    throw ConfigError(entry.key, "expected " + std::string(expected) + ", got '" + entry.value +
                                     "'" + where);
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::istream& in) {
    std::vector<ConfigEntry> entries;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        ConfigEntry entry{std::string(trim(line.substr(0, eq))),
                          std::string(trim(line.substr(eq + 1))), line_no};
        if (entry.key.empty()) {
            throw ConfigError("line " + std::to_string(line_no), "empty key");
        }
        if (entry.value.empty()) bad_value(entry, "a value");
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<ConfigEntry> parse_config_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

ConfigEntry parse_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(assignment), "override must be KEY=VALUE");
    }
    ConfigEntry entry{std::string(trim(assignment.substr(0, eq))),
                      std::string(trim(assignment.substr(eq + 1))), 0};
    if (entry.key.empty()) throw ConfigError(std::string(assignment), "empty key");
    if (entry.value.empty()) bad_value(entry, "a value");
    return entry;
}

double parse_double(const ConfigEntry& entry) {
    double value = 0.0;
    const char* first = entry.value.data();
    const char* last = first + entry.value.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        bad_value(entry, "a finite number");
    }
    return value;
}

std::int64_t parse_int(const ConfigEntry& entry) {
    std::int64_t value = 0;
    const char* first = entry.value.data();
    const char* last = first + entry.value.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) bad_value(entry, "an integer");
    return value;
}

std::uint64_t parse_u64(const ConfigEntry& entry) {
    std::uint64_t value = 0;
    const char* first = entry.value.data();
    const char* last = first + entry.value.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) bad_value(entry, "an unsigned 64-bit integer");
    return value;
}

bool parse_bool(const ConfigEntry& entry) {
    if (entry.value == "true" || entry.value == "1" || entry.value == "on") return true;
    if (entry.value == "false" || entry.value == "0" || entry.value == "off") return false;
    bad_value(entry, "true or false");
}

std::vector<double> parse_double_list(const ConfigEntry& entry) {
    std::vector<double> out;
    const std::string_view text = entry.value;

    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto next = text.find(':', pos);
            const auto piece = trim(text.substr(pos, next == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : next - pos));
            parts.push_back(parse_double({entry.key, std::string(piece), entry.line}));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        if (parts.size() != 3 || parts[1] == 0.0 ||
            (parts[2] - parts[0]) / parts[1] < 0.0 ||
            (parts[2] - parts[0]) / parts[1] > 1e6) {
            bad_value(entry, "start:step:stop with a step pointing from start to stop");
        }
        const auto count = static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
        for (long i = 0; i <= count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
        return out;
    }

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto next = text.find(',', pos);
        const auto piece = trim(text.substr(
            pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        out.push_back(parse_double({entry.key, std::string(piece), entry.line}));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

bool apply_system_key(SystemConfig& config, const ConfigEntry& entry) {
    const std::string& key = entry.key;
    if (key == "f_c") {
        config.carrier_hz = parse_double(entry);
    } else if (key == "f_c_ghz") {
        config.carrier_hz = parse_double(entry) * 1e9;
    } else if (key == "B_c") {
        config.bandwidth_hz = parse_double(entry);
    } else if (key == "B_c_ghz") {
        config.bandwidth_hz = parse_double(entry) * 1e9;
    } else if (key == "r_res") {
        config.range_resolution_m = parse_double(entry);
    } else if (key == "a") {
        config.protection_factor = parse_double(entry);
    } else if (key == "r_max") {
        config.max_range_m = parse_double(entry);
    } else if (key == "v_max") {
        config.max_speed_mps = parse_double(entry);
    } else if (key == "v_max_kmps") {
        config.max_speed_mps = parse_double(entry) * 1e3;
    } else if (key == "zero_pad_factor") {
        const auto v = parse_int(entry);
        if (v < 1 || v > 64) bad_value(entry, "an integer in [1, 64]");
        config.zero_pad_factor = static_cast<int>(v);
    } else if (key == "nyquist_factor") {
        config.nyquist_factor = parse_double(entry);
    } else if (key == "carrier_correction") {
        if (entry.value == "paper") {
            config.carrier_correction = CarrierCorrection::paper;
        } else if (entry.value == "exact") {
            config.carrier_correction = CarrierCorrection::exact;
        } else {
            bad_value(entry, "paper or exact");
        }
    } else if (key == "transition_fit") {
        if (entry.value != "literal_clamped") bad_value(entry, "literal_clamped");
        config.transition_fit = TransitionFit::literal_clamped;
    } else if (key == "peak_interpolation") {
        config.peak_interpolation = parse_bool(entry);
    } else if (key == "master_seed") {
        config.master_seed = parse_u64(entry);
    } else {
        return false;
    }
    return true;
}

}  // namespace dfmcw
