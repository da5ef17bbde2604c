#include "dfmcw/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dfmcw/rng.hpp"

namespace dfmcw {

double two_way_delay(const TargetState& target, double t) {
    return 2.0 * (target.range_m + target.speed_mps * t) / kSpeedOfLight;
}

BasebandSignal sensing_echo(const RampSpec& spec, const TargetState& target, double amplitude) {
    check_ramp_spec(spec);
    if (!(std::isfinite(amplitude) && amplitude >= 0.0)) {
        throw std::invalid_argument("echo amplitude must be non-negative");
    }
    if (!std::isfinite(target.range_m) || !std::isfinite(target.speed_mps)) {
        throw std::invalid_argument("target state must be finite");
    }

    const double t_last = static_cast<double>(spec.n_samples - 1) / spec.sample_rate_hz;
    const double tau_first = two_way_delay(target, 0.0);
    const double tau_last = two_way_delay(target, t_last);
    if (tau_first < 0.0 || tau_last < 0.0) {
        throw std::domain_error("target delay is negative inside the ramp");
    }
    if (std::max(tau_first, tau_last) >= spec.duration_s) {
        throw std::domain_error("round-trip delay " +
                                std::to_string(std::max(tau_first, tau_last)) +
                                " s reaches the ramp duration; target is ambiguous");
    }

    BasebandSignal out;
    out.sample_rate_hz = spec.sample_rate_hz;
    out.t0_s = 0.0;
    out.samples.resize(spec.n_samples);
    for (std::size_t n = 0; n < spec.n_samples; ++n) {
        const double t = static_cast<double>(n) / spec.sample_rate_hz;
        const double tau = two_way_delay(target, t);
        const double cycles =
            ramp_phase_cycles(spec.chirp_rate_hz_per_s, t - tau) - spec.reference_hz * tau;
        out.samples[n] = amplitude * cis_cycles(cycles);
    }
    return out;
}

namespace {

void check_link(const LinkState& link, double amplitude) {
    if (!std::isfinite(link.distance_m) || link.distance_m < 0.0 ||
        !std::isfinite(link.speed_mps)) {
        throw std::invalid_argument("link distance must be non-negative and finite");
    }
    if (!(std::isfinite(amplitude) && amplitude >= 0.0)) {
        throw std::invalid_argument("link amplitude must be non-negative");
    }
}

}  // namespace

BasebandSignal comm_propagate(const ChirpTrain& tx, const LinkState& link, double amplitude) {
    check_link(link, amplitude);
    const double nominal = link.distance_m / kSpeedOfLight;
    const double symbol = 2.0 * tx.ramp_slot_s();
    const double drift = std::abs(link.speed_mps) * tx.duration_s() / kSpeedOfLight;
    if (drift >= symbol) {
        throw std::domain_error("link motion drifts the arrival by a full symbol");
    }

    BasebandSignal out;
    out.sample_rate_hz = tx.sample_rate_hz();
    out.t0_s = nominal;
    out.samples.resize(tx.total_samples());
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
        const double t = out.time_at(n);
        const double tau = (link.distance_m + link.speed_mps * t) / kSpeedOfLight;
        // t - tau = n / f_s - (tau - R / c)
        const auto value = tx.at_sample(n, link.speed_mps * t / kSpeedOfLight);
        out.samples[n] = amplitude * value.baseband * cis_cycles(-value.reference_hz * tau);
    }
    return out;
}

BasebandSignal comm_propagate(const BasebandSignal& signal, const LinkState& link,
                              double reference_hz, double amplitude) {
    check_signal(signal);
    check_link(link, amplitude);
    const double nominal = link.distance_m / kSpeedOfLight;
    const double drift = std::abs(link.speed_mps) * signal.duration_s() / kSpeedOfLight;
    if (drift >= signal.duration_s()) {
        throw std::domain_error("link motion drifts the arrival beyond the signal");
    }

    BasebandSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.t0_s = signal.t0_s + nominal;
    out.samples.assign(signal.size(), Complex{0.0, 0.0});
    const auto n_total = static_cast<long long>(signal.size());
    for (long long n = 0; n < n_total; ++n) {
        const double t = out.time_at(static_cast<std::size_t>(n));
        const double tau = (link.distance_m + link.speed_mps * t) / kSpeedOfLight;
        const auto shift = std::llround((tau - nominal) * signal.sample_rate_hz);
        const long long src = n - shift;
        if (src < 0 || src >= n_total) continue;
        out.samples[static_cast<std::size_t>(n)] =
            amplitude * signal.samples[static_cast<std::size_t>(src)] *
            cis_cycles(-reference_hz * tau);
    }
    return out;
}

void add_awgn_in_place(BasebandSignal& signal, const NoiseSpec& noise) {
    if (signal.samples.empty()) throw std::invalid_argument("cannot add noise to an empty signal");
    if (noise.is_noiseless()) return;
    if (!std::isfinite(noise.snr_db)) throw std::invalid_argument("snr_db must be finite or +inf");

    const double signal_power = mean_power(signal);
    // A silent input still gets noise at unit reference power, so pure-noise
    // trials stay meaningful.
    const double reference = signal_power > 0.0 ? signal_power : 1.0;
    const double variance = reference / std::pow(10.0, noise.snr_db / 10.0);
    const double sigma = std::sqrt(variance / 2.0);

    NormalSource normal(noise.seed);
    for (auto& s : signal.samples) {
        const double re = normal.next();
        const double im = normal.next();
        s += Complex{sigma * re, sigma * im};
    }
}

BasebandSignal add_awgn(BasebandSignal signal, const NoiseSpec& noise) {
    add_awgn_in_place(signal, noise);
    return signal;
}

}  // namespace dfmcw
