#pragma once

#include <cstdint>
#include <limits>

#include "dfmcw/signal.hpp"
#include "dfmcw/waveform.hpp"

namespace dfmcw {

/// Point target. Positive speed means receding.
struct TargetState {
    double range_m = 0.0;
    double speed_mps = 0.0;
};

/// Inter-satellite link geometry.
struct LinkState {
    double distance_m = 0.0;
    double speed_mps = 0.0;
};

/// Per-complex-sample SNR at the receiver input, before any processing gain.
struct NoiseSpec {
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;

    static NoiseSpec noiseless() { return {}; }
    bool is_noiseless() const noexcept { return snr_db == std::numeric_limits<double>::infinity(); }
};

/// Round-trip delay 2 (r0 + v0 t) / c.
double two_way_delay(const TargetState& target, double t);

/// Echo of one ramp off a moving point target, evaluated in closed form:
///
///   y[n] = A exp(j pi mu (t_n - tau(t_n))^2) exp(-j 2 pi f_ref tau(t_n))
///
/// Throws std::domain_error if the delay is negative or reaches the ramp
/// duration anywhere inside the ramp.
BasebandSignal sensing_echo(const RampSpec& spec, const TargetState& target,
                            double amplitude = 1.0);

/// One-way propagation of a transmitted chirp train, delay (R + v t) / c.
///
/// The output is sampled on the receiver clock, which starts at the nominal
/// arrival time R / c (recorded in t0_s): a static link therefore shows up as
/// a pure carrier phase rotation. Throws std::domain_error when the motion
/// drifts the arrival by a full symbol within the train.
BasebandSignal comm_propagate(const ChirpTrain& tx, const LinkState& link, double amplitude = 1.0);

/// Fallback for sampled inputs: the waveform moves by the nearest whole
/// sample and the carrier rotation uses `reference_hz`; the sub-sample part of
/// the delay only enters through the phase.
BasebandSignal comm_propagate(const BasebandSignal& signal, const LinkState& link,
                              double reference_hz, double amplitude = 1.0);

/// Adds circularly-symmetric complex Gaussian noise of variance
/// mean|s|^2 / 10^(snr_db / 10). A noiseless spec returns the input unchanged.
BasebandSignal add_awgn(BasebandSignal signal, const NoiseSpec& noise);
void add_awgn_in_place(BasebandSignal& signal, const NoiseSpec& noise);

}  // namespace dfmcw
