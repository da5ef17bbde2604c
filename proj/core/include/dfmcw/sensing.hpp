#pragma once

#include "dfmcw/channel.hpp"
#include "dfmcw/params.hpp"
#include "dfmcw/signal.hpp"
#include "dfmcw/waveform.hpp"

namespace dfmcw {

struct SenseEstimate {
    double beat_up_hz = 0.0;
    double beat_down_hz = 0.0;
    double speed_mps = 0.0;
    double range_m = 0.0;
};

struct MotionEstimate {
    double speed_mps = 0.0;
    double range_m = 0.0;
};

/// tx[n] * conj(rx[n]). Throws std::invalid_argument on length or rate mismatch.
BasebandSignal dechirp(const BasebandSignal& tx, const BasebandSignal& rx);

/// Signed frequency of the strongest periodogram bin after zero-padding the
/// beat signal to zero_pad_factor * n samples.
double estimate_tone(const BasebandSignal& beat, int zero_pad_factor, bool interpolate = false);

/// Recovers speed and distance from the up/down beat pair.
///
///   paper: v = c (f_up + f_down) / (4 f_c)
///   exact: v = c (f_up + f_down) / (2 (2 f_c + B_c))
///   both:  r = c (f_up - f_down) / (4 mu (1 - 2 v / c))
///
/// Throws std::domain_error when 1 - 2 v / c <= 0.
MotionEstimate invert(double beat_up_hz, double beat_down_hz, const DerivedParams& derived,
                      CarrierCorrection mode);

/// Noisy echoes captured by a sensing run, for signal dumps.
struct SenseTrace {
    BasebandSignal up_echo;
    BasebandSignal down_echo;
};

/// Triangular-ramp sensing receiver. Holds the transmit ramps of one
/// configuration so repeated trials do not regenerate them; const methods are
/// safe to call concurrently.
class SensingReceiver {
public:
    explicit SensingReceiver(const DerivedParams& derived);

    /// Up and down echoes get independent noise realisations derived from
    /// `noise.seed`. Sub-threshold SNR produces a wrong estimate, not an error.
    SenseEstimate sense(const TargetState& target, const NoiseSpec& noise,
                        double amplitude = 1.0, SenseTrace* trace = nullptr) const;

    const DerivedParams& derived() const noexcept { return derived_; }

private:
    DerivedParams derived_;
    RampSpec up_spec_;
    RampSpec down_spec_;
    BasebandSignal up_tx_;
    BasebandSignal down_tx_;
};

SenseEstimate sense(const TargetState& target, const NoiseSpec& noise, const SystemConfig& config);

}  // namespace dfmcw
