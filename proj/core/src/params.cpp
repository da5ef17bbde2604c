#include "dfmcw/params.hpp"

#include <cmath>

#include "dfmcw/constants.hpp"

namespace dfmcw {

std::string_view to_string(CarrierCorrection mode) {
    return mode == CarrierCorrection::paper ? "paper" : "exact";
}

std::string_view to_string(TransitionFit) { return "literal_clamped"; }

namespace {

void require(bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(key, what);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void validate(const SystemConfig& config) {
    require(positive_finite(config.carrier_hz), "f_c", "must be positive and finite");
    require(config.bandwidth_hz.has_value() != config.range_resolution_m.has_value(), "B_c",
            "exactly one of B_c and r_res must be given");
    if (config.bandwidth_hz) {
        require(positive_finite(*config.bandwidth_hz), "B_c", "must be positive and finite");
    } else {
        require(positive_finite(*config.range_resolution_m), "r_res",
                "must be positive and finite");
    }
    require(std::isfinite(config.protection_factor) && config.protection_factor >= 1.0, "a",
            "protection time factor must be >= 1");
    require(positive_finite(config.max_range_m), "r_max", "must be positive and finite");
    require(positive_finite(config.max_speed_mps) && config.max_speed_mps < kSpeedOfLight,
            "v_max", "must satisfy 0 < v_max < c");
    require(config.zero_pad_factor >= 1, "zero_pad_factor", "must be >= 1");
    require(std::isfinite(config.nyquist_factor) && config.nyquist_factor >= 1.0,
            "nyquist_factor", "must be >= 1");
}

DerivedParams derive(const SystemConfig& config) {
    validate(config);

    DerivedParams d;
    d.carrier_hz = config.carrier_hz;
    if (config.bandwidth_hz) {
        d.bandwidth_hz = *config.bandwidth_hz;
        d.range_resolution_m = kSpeedOfLight / (2.0 * d.bandwidth_hz);
    } else {
        d.range_resolution_m = *config.range_resolution_m;
        d.bandwidth_hz = kSpeedOfLight / (2.0 * d.range_resolution_m);
    }
    d.protection_factor = config.protection_factor;
    d.max_range_m = config.max_range_m;
    d.max_speed_mps = config.max_speed_mps;
    d.wavelength_m = kSpeedOfLight / config.carrier_hz;
    d.ramp_duration_s = config.protection_factor * config.max_range_m / kSpeedOfLight;
    d.symbol_duration_s = 2.0 * d.ramp_duration_s;
    d.chirp_rate_hz_per_s = d.bandwidth_hz / d.ramp_duration_s;
    // mu * r_max = B_c * c / a, so the range term is 2 B_c / a; writing it that
    // way keeps f_s bitwise independent of r_max.
    d.max_beat_hz = 2.0 * config.carrier_hz * config.max_speed_mps / kSpeedOfLight +
                    2.0 * d.bandwidth_hz / config.protection_factor;
    d.sample_rate_hz = config.nyquist_factor * d.max_beat_hz;

    const double samples = std::ceil(d.sample_rate_hz * d.ramp_duration_s);
    if (!(samples >= static_cast<double>(kMinSamplesPerRamp)) || samples > 1e9) {
        throw ConfigError("r_max", "configuration yields " + std::to_string(samples) +
                                       " samples per ramp (allowed 16 .. 1e9)");
    }
    d.samples_per_ramp = static_cast<std::size_t>(samples);
    d.data_rate_bps = 1.0 / d.symbol_duration_s;
    d.zero_pad_factor = config.zero_pad_factor;
    d.freq_bin_hz = d.sample_rate_hz /
                    (static_cast<double>(config.zero_pad_factor) *
                     static_cast<double>(d.samples_per_ramp));
    d.carrier_correction = config.carrier_correction;
    d.peak_interpolation = config.peak_interpolation;
    return d;
}

SystemConfig reference_config() { return SystemConfig{}; }

}  // namespace dfmcw
