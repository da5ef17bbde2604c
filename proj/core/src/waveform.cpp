#include "dfmcw/waveform.hpp"

#include <stdexcept>
#include <string>

namespace dfmcw {

RampSpec ramp_spec(RampDirection direction, const DerivedParams& derived) {
    RampSpec spec;
    spec.direction = direction;
    const bool up = direction == RampDirection::up;
    spec.chirp_rate_hz_per_s = up ? derived.chirp_rate_hz_per_s : -derived.chirp_rate_hz_per_s;
    spec.reference_hz = up ? derived.carrier_hz : derived.carrier_hz + derived.bandwidth_hz;
    spec.duration_s = derived.ramp_duration_s;
    spec.sample_rate_hz = derived.sample_rate_hz;
    spec.n_samples = derived.samples_per_ramp;
    return spec;
}

void check_ramp_spec(const RampSpec& spec) {
    if (spec.n_samples < kMinSamplesPerRamp) {
        throw std::invalid_argument("ramp has " + std::to_string(spec.n_samples) +
                                    " samples, need at least " +
                                    std::to_string(kMinSamplesPerRamp));
    }
    if (!(spec.sample_rate_hz > 0.0) || !(spec.duration_s > 0.0)) {
        throw std::invalid_argument("ramp duration and sample rate must be positive");
    }
    const double expected = spec.duration_s * spec.sample_rate_hz;
    if (std::abs(expected - static_cast<double>(spec.n_samples)) > 1.0) {
        throw std::invalid_argument("ramp sample count disagrees with duration * sample rate");
    }
    const bool up = spec.direction == RampDirection::up;
    if ((up && !(spec.chirp_rate_hz_per_s > 0.0)) || (!up && !(spec.chirp_rate_hz_per_s < 0.0))) {
        throw std::invalid_argument("ramp chirp rate sign does not match its direction");
    }
}

BasebandSignal ramp_samples(const RampSpec& spec) {
    check_ramp_spec(spec);
    BasebandSignal out;
    out.sample_rate_hz = spec.sample_rate_hz;
    out.t0_s = 0.0;
    out.samples.resize(spec.n_samples);
    for (std::size_t n = 0; n < spec.n_samples; ++n) {
        const double t = static_cast<double>(n) / spec.sample_rate_hz;
        out.samples[n] = cis_cycles(ramp_phase_cycles(spec.chirp_rate_hz_per_s, t));
    }
    return out;
}

SymbolShape shape_for_bit(int bit) {
    if (bit == 0) return SymbolShape::up_down;
    if (bit == 1) return SymbolShape::down_up;
    throw std::invalid_argument("bit must be 0 or 1, got " + std::to_string(bit));
}

int bit_for_shape(SymbolShape shape) { return shape == SymbolShape::up_down ? 0 : 1; }

std::array<RampDirection, 2> ramps_of(SymbolShape shape) {
    if (shape == SymbolShape::up_down) return {RampDirection::up, RampDirection::down};
    return {RampDirection::down, RampDirection::up};
}

BasebandSignal symbol_samples(int bit, const DerivedParams& derived) {
    const auto ramps = ramps_of(shape_for_bit(bit));
    BasebandSignal out;
    out.sample_rate_hz = derived.sample_rate_hz;
    out.samples.reserve(2 * derived.samples_per_ramp);
    for (const auto direction : ramps) {
        const auto ramp = ramp_samples(ramp_spec(direction, derived));
        out.samples.insert(out.samples.end(), ramp.samples.begin(), ramp.samples.end());
    }
    return out;
}

BasebandSignal modulate(std::span<const std::uint8_t> bits, const DerivedParams& derived) {
    if (bits.empty()) throw std::invalid_argument("cannot modulate an empty bit sequence");
    const auto zero = symbol_samples(0, derived);
    const auto one = symbol_samples(1, derived);
    BasebandSignal out;
    out.sample_rate_hz = derived.sample_rate_hz;
    out.samples.reserve(bits.size() * zero.size());
    for (const auto bit : bits) {
        if (bit > 1) throw std::invalid_argument("bits must be 0 or 1");
        const auto& symbol = bit == 0 ? zero : one;
        out.samples.insert(out.samples.end(), symbol.samples.begin(), symbol.samples.end());
    }
    return out;
}

ChirpTrain::ChirpTrain(std::vector<std::uint8_t> bits, const DerivedParams& derived)
    : bits_(std::move(bits)),
      chirp_rate_(derived.chirp_rate_hz_per_s),
      up_reference_(derived.carrier_hz),
      down_reference_(derived.carrier_hz + derived.bandwidth_hz),
      sample_rate_hz_(derived.sample_rate_hz),
      samples_per_ramp_(derived.samples_per_ramp),
      ramp_slot_s_(static_cast<double>(derived.samples_per_ramp) / derived.sample_rate_hz),
      symbols_{symbol_samples(0, derived).samples, symbol_samples(1, derived).samples} {
    if (bits_.empty()) throw std::invalid_argument("chirp train needs at least one bit");
    for (const auto b : bits_) {
        if (b > 1) throw std::invalid_argument("bits must be 0 or 1");
    }
}

RampDirection ChirpTrain::direction_of(std::size_t ramp) const {
    return ramps_of(shape_for_bit(bits_[ramp / 2]))[ramp % 2];
}

ChirpTrain::Value ChirpTrain::ramp_value(std::size_t ramp, double local) const {
    const bool up = direction_of(ramp) == RampDirection::up;
    const double rate = up ? chirp_rate_ : -chirp_rate_;
    return {cis_cycles(ramp_phase_cycles(rate, local)), up ? up_reference_ : down_reference_};
}

ChirpTrain::Value ChirpTrain::at(double t) const {
    if (!(t >= 0.0) || t >= duration_s()) return {Complex{0.0, 0.0}, up_reference_};
    auto ramp = static_cast<std::size_t>(t / ramp_slot_s_);
    ramp = std::min(ramp, 2 * bits_.size() - 1);
    return ramp_value(ramp, t - static_cast<double>(ramp) * ramp_slot_s_);
}

ChirpTrain::Value ChirpTrain::at_sample(std::size_t n, double delay_s) const {
    const std::size_t n_ramps = 2 * bits_.size();
    auto ramp = static_cast<long long>(n / samples_per_ramp_);
    double local =
        static_cast<double>(n % samples_per_ramp_) / sample_rate_hz_ - delay_s;
    while (local < 0.0) {
        local += ramp_slot_s_;
        --ramp;
    }
    while (local >= ramp_slot_s_) {
        local -= ramp_slot_s_;
        ++ramp;
    }
    if (ramp < 0 || ramp >= static_cast<long long>(n_ramps)) {
        return {Complex{0.0, 0.0}, up_reference_};
    }
    return ramp_value(static_cast<std::size_t>(ramp), local);
}

double ChirpTrain::reference_at(double t) const { return at(t).reference_hz; }

BasebandSignal ChirpTrain::sampled() const {
    BasebandSignal out;
    out.sample_rate_hz = sample_rate_hz_;
    out.samples.reserve(total_samples());
    for (const auto bit : bits_) {
        const auto& symbol = symbols_[bit];
        out.samples.insert(out.samples.end(), symbol.begin(), symbol.end());
    }
    return out;
}

}  // namespace dfmcw
