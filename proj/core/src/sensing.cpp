#include "dfmcw/sensing.hpp"

#include <cmath>
#include <stdexcept>

#include "dfmcw/rng.hpp"
#include "dfmcw/spectrum.hpp"

namespace dfmcw {

BasebandSignal dechirp(const BasebandSignal& tx, const BasebandSignal& rx) {
    if (tx.size() != rx.size()) {
        throw std::invalid_argument("dechirp: length mismatch (" + std::to_string(tx.size()) +
                                    " vs " + std::to_string(rx.size()) + ")");
    }
    if (tx.sample_rate_hz != rx.sample_rate_hz) {
        throw std::invalid_argument("dechirp: sample rate mismatch");
    }
    if (tx.samples.empty()) throw std::invalid_argument("dechirp: empty input");

    BasebandSignal beat;
    beat.sample_rate_hz = tx.sample_rate_hz;
    beat.t0_s = tx.t0_s;
    beat.samples.resize(tx.size());
    for (std::size_t n = 0; n < tx.size(); ++n) {
        beat.samples[n] = tx.samples[n] * std::conj(rx.samples[n]);
    }
    return beat;
}

double estimate_tone(const BasebandSignal& beat, int zero_pad_factor, bool interpolate) {
    if (beat.samples.empty()) throw std::invalid_argument("estimate_tone: empty beat signal");
    if (zero_pad_factor < 1) throw std::invalid_argument("estimate_tone: zero_pad_factor < 1");
    const std::size_t n_fft = static_cast<std::size_t>(zero_pad_factor) * beat.size();
    const auto spectrum = forward_dft(beat.samples, n_fft);
    return periodogram_peak(spectrum, beat.sample_rate_hz, interpolate).frequency_hz;
}

MotionEstimate invert(double beat_up_hz, double beat_down_hz, const DerivedParams& derived,
                      CarrierCorrection mode) {
    if (!std::isfinite(beat_up_hz) || !std::isfinite(beat_down_hz)) {
        throw std::invalid_argument("invert: beat frequencies must be finite");
    }
    const double sum = beat_up_hz + beat_down_hz;
    const double speed =
        mode == CarrierCorrection::paper
            ? kSpeedOfLight * sum / (4.0 * derived.carrier_hz)
            : kSpeedOfLight * sum / (2.0 * (2.0 * derived.carrier_hz + derived.bandwidth_hz));
    const double coupling = 1.0 - 2.0 * speed / kSpeedOfLight;
    if (!(coupling > 0.0)) {
        throw std::domain_error("invert: speed estimate makes 1 - 2v/c non-positive");
    }
    const double range = kSpeedOfLight * (beat_up_hz - beat_down_hz) /
                         (4.0 * derived.chirp_rate_hz_per_s * coupling);
    return {speed, range};
}

SensingReceiver::SensingReceiver(const DerivedParams& derived)
    : derived_(derived),
      up_spec_(ramp_spec(RampDirection::up, derived)),
      down_spec_(ramp_spec(RampDirection::down, derived)),
      up_tx_(ramp_samples(up_spec_)),
      down_tx_(ramp_samples(down_spec_)) {}

SenseEstimate SensingReceiver::sense(const TargetState& target, const NoiseSpec& noise,
                                     double amplitude, SenseTrace* trace) const {
    auto up_echo = sensing_echo(up_spec_, target, amplitude);
    auto down_echo = sensing_echo(down_spec_, target, amplitude);
    add_awgn_in_place(up_echo, {noise.snr_db, stable_hash(noise.seed, 0, 0)});
    add_awgn_in_place(down_echo, {noise.snr_db, stable_hash(noise.seed, 0, 1)});

    SenseEstimate est;
    est.beat_up_hz = estimate_tone(dechirp(up_tx_, up_echo), derived_.zero_pad_factor,
                                   derived_.peak_interpolation);
    est.beat_down_hz = estimate_tone(dechirp(down_tx_, down_echo), derived_.zero_pad_factor,
                                     derived_.peak_interpolation);
    const auto motion =
        invert(est.beat_up_hz, est.beat_down_hz, derived_, derived_.carrier_correction);
    est.speed_mps = motion.speed_mps;
    est.range_m = motion.range_m;

    if (trace != nullptr) {
        trace->up_echo = std::move(up_echo);
        trace->down_echo = std::move(down_echo);
    }
    return est;
}

SenseEstimate sense(const TargetState& target, const NoiseSpec& noise, const SystemConfig& config) {
    return SensingReceiver(derive(config)).sense(target, noise);
}

}  // namespace dfmcw
