#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dfmcw/params.hpp"
#include "dfmcw/signal.hpp"
#include "dfmcw/waveform.hpp"

namespace dfmcw {

/// What is left after delay and Doppler compensation; (0, 0) is perfect.
struct CompensationResidual {
    double delay_s = 0.0;
    double doppler_hz = 0.0;
};

/// r'(t) = s(t - d) exp(-j 2 pi f_ref d) exp(j 2 pi f_D t), with the delayed
/// waveform regenerated in closed form. Throws std::invalid_argument when
/// |d| is not below one symbol.
BasebandSignal apply_residual(const ChirpTrain& tx, const CompensationResidual& residual);

/// Sampled-input fallback: the delay is rounded to the nearest sample for
/// the waveform and applied exactly to the carrier phase via `reference_hz`.
BasebandSignal apply_residual(const BasebandSignal& signal, const CompensationResidual& residual,
                              double reference_hz, double symbol_duration_s);

/// Correlator outputs k_b = |sum rx conj(ref_b)| / (2 N) for b = 0, 1.
struct SymbolScores {
    double k0 = 0.0;
    double k1 = 0.0;
};

/// Noncoherent two-template detector over one symbol (two ramps).
/// Immutable after construction; safe for concurrent use.
class SymbolDetector {
public:
    explicit SymbolDetector(const DerivedParams& derived);

    std::size_t symbol_samples() const noexcept { return templates_[0].size(); }

    SymbolScores scores(std::span<const Complex> rx) const;
    /// argmax_b k_b; a tie decides 0.
    int detect(std::span<const Complex> rx) const;
    /// Per-symbol decisions over consecutive windows.
    std::vector<std::uint8_t> demodulate(std::span<const Complex> rx, std::size_t n_bits) const;

private:
    std::array<std::vector<Complex>, 2> templates_;
};

int detect_symbol(const BasebandSignal& rx, const DerivedParams& derived);
std::vector<std::uint8_t> demodulate(const BasebandSignal& rx, std::size_t n_bits,
                                     const DerivedParams& derived);

}  // namespace dfmcw
