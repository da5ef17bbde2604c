#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dfmcw {

/// Raised for any configuration that violates a parameter invariant. The
/// message always starts with the offending config key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& what)
        : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Which carrier the speed inversion uses for the down ramp.
///  paper: f_c for both ramps.
///  exact: f_c for the up ramp and f_c + B_c for the down ramp.
enum class CarrierCorrection { paper, exact };

/// Treatment of the transition region of the RCS fit. Only the literal
/// min-of-three-lines form, clamped to a positive floor, is supported.
enum class TransitionFit { literal_clamped };

std::string_view to_string(CarrierCorrection mode);
std::string_view to_string(TransitionFit fit);

/// User-facing radar/communication parameters. Exactly one of
/// `bandwidth_hz` and `range_resolution_m` must be set.
struct SystemConfig {
    double carrier_hz = 340e9;
    std::optional<double> bandwidth_hz = 1.5e9;
    std::optional<double> range_resolution_m;
    double protection_factor = 5.5;
    double max_range_m = 500.0;
    double max_speed_mps = 15e3;
    int zero_pad_factor = 2;
    double nyquist_factor = 2.0;
    CarrierCorrection carrier_correction = CarrierCorrection::paper;
    TransitionFit transition_fit = TransitionFit::literal_clamped;
    bool peak_interpolation = false;
    std::uint64_t master_seed = 0;
};

/// Every quantity derived from a SystemConfig.
///
/// A symbol is one triangle (two ramps). The symbol lasts
/// `a * 2 * r_max / c`, each ramp half of that, and the chirp rate is the
/// sweep bandwidth over one ramp.
struct DerivedParams {
    double carrier_hz = 0.0;
    double bandwidth_hz = 0.0;
    double range_resolution_m = 0.0;
    double protection_factor = 0.0;
    double max_range_m = 0.0;
    double max_speed_mps = 0.0;
    double wavelength_m = 0.0;
    double ramp_duration_s = 0.0;
    double symbol_duration_s = 0.0;
    double chirp_rate_hz_per_s = 0.0;
    double max_beat_hz = 0.0;
    double sample_rate_hz = 0.0;
    std::size_t samples_per_ramp = 0;
    double data_rate_bps = 0.0;
    double freq_bin_hz = 0.0;
    int zero_pad_factor = 1;
    CarrierCorrection carrier_correction = CarrierCorrection::paper;
    bool peak_interpolation = false;
};

inline constexpr std::size_t kMinSamplesPerRamp = 16;

/// Throws ConfigError naming the first violated field.
void validate(const SystemConfig& config);

/// Pure function of `config`; throws ConfigError on invalid input.
DerivedParams derive(const SystemConfig& config);

/// Defaults of the reference scenario (340 GHz, 1.5 GHz sweep, a = 5.5,
/// 500 m unambiguous distance, 15 km/s maximum speed).
SystemConfig reference_config();

}  // namespace dfmcw
