#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "dfmcw/constants.hpp"
#include "dfmcw/params.hpp"
#include "dfmcw/signal.hpp"

namespace dfmcw {

/// exp(j 2 pi cycles), with the integer part of `cycles` removed first so
/// large accumulated phases keep their fractional precision.
inline Complex cis_cycles(double cycles) {
    const double frac = cycles - std::round(cycles);
    return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

enum class RampDirection { up, down };

/// One linear frequency ramp at complex baseband.
///
/// The RF sweep of an up ramp runs f_c -> f_c + B_c and a down ramp runs
/// back from f_c + B_c -> f_c. Each ramp is simulated relative to the RF
/// frequency at its own start (`reference_hz`), so its baseband form is
/// exp(j pi mu t^2) with mu signed.
struct RampSpec {
    RampDirection direction = RampDirection::up;
    double chirp_rate_hz_per_s = 0.0;  // +mu for up, -mu for down
    double reference_hz = 0.0;         // f_c for up, f_c + B_c for down
    double duration_s = 0.0;
    double sample_rate_hz = 0.0;
    std::size_t n_samples = 0;
};

RampSpec ramp_spec(RampDirection direction, const DerivedParams& derived);

/// Throws std::invalid_argument when the spec is inconsistent or has fewer
/// than kMinSamplesPerRamp samples.
void check_ramp_spec(const RampSpec& spec);

/// Baseband phase of a ramp at local time t, in cycles.
inline double ramp_phase_cycles(double chirp_rate_hz_per_s, double t) {
    return 0.5 * chirp_rate_hz_per_s * t * t;
}

/// Unit-amplitude samples of one ramp, t_n = n / f_s.
BasebandSignal ramp_samples(const RampSpec& spec);

/// Bit 0 is sent as up-then-down, bit 1 as down-then-up.
enum class SymbolShape { up_down, down_up };

SymbolShape shape_for_bit(int bit);
int bit_for_shape(SymbolShape shape);
std::array<RampDirection, 2> ramps_of(SymbolShape shape);

/// Two ramps of `samples_per_ramp` samples each.
BasebandSignal symbol_samples(int bit, const DerivedParams& derived);

/// Concatenation of symbol_samples for each bit. Bits must be 0 or 1.
BasebandSignal modulate(std::span<const std::uint8_t> bits, const DerivedParams& derived);

/// Closed-form transmit waveform of a bit sequence.
///
/// Each ramp occupies `samples_per_ramp / f_s` seconds, matching the sampled
/// stream produced by modulate(), so the train can be evaluated at arbitrary
/// (delayed) instants. Outside [0, duration) the transmitter is silent.
class ChirpTrain {
public:
    struct Value {
        Complex baseband;
        double reference_hz;
    };

    ChirpTrain(std::vector<std::uint8_t> bits, const DerivedParams& derived);

    Value at(double t) const;
    /// Value at sample instant n / f_s - delay_s. Ramp boundaries are located
    /// from the integer index, so a zero delay reproduces modulate() exactly.
    Value at_sample(std::size_t n, double delay_s) const;
    /// Reference carrier of the ramp active at t (f_c outside the train).
    double reference_at(double t) const;
    /// Same samples as modulate(bits(), derived).
    BasebandSignal sampled() const;

    double ramp_slot_s() const noexcept { return ramp_slot_s_; }
    double duration_s() const noexcept {
        return ramp_slot_s_ * static_cast<double>(2 * bits_.size());
    }
    std::size_t total_samples() const noexcept { return 2 * bits_.size() * samples_per_ramp_; }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

private:
    RampDirection direction_of(std::size_t ramp) const;
    Value ramp_value(std::size_t ramp, double local) const;

    std::vector<std::uint8_t> bits_;
    double chirp_rate_ = 0.0;
    double up_reference_ = 0.0;
    double down_reference_ = 0.0;
    double sample_rate_hz_ = 0.0;
    std::size_t samples_per_ramp_ = 0;
    double ramp_slot_s_ = 0.0;
    std::array<std::vector<Complex>, 2> symbols_;
};

}  // namespace dfmcw
