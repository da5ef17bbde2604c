#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dfmcw/signal.hpp"

namespace dfmcw {

/// Forward DFT X[k] = sum_n x[n] exp(-j 2 pi k n / n_fft) of `input`
/// zero-padded to `n_fft` (n_fft >= input.size()). Reentrant; FFTW plans are
/// created once per size and shared.
std::vector<Complex> forward_dft(std::span<const Complex> input, std::size_t n_fft);

/// Periodogram peak of a zero-padded DFT.
struct SpectralPeak {
    long long bin = 0;        // signed: bins above n_fft/2 map to negative frequencies
    double frequency_hz = 0;  // bin * f_s / n_fft, optionally refined
    double power = 0;         // |X[bin]|^2
};

/// Argmax of |X[k]|^2 with signed bin mapping; ties go to the lowest |f|.
/// With `interpolate`, the frequency is refined by a parabola through the
/// log-power of the peak and its two neighbours.
SpectralPeak periodogram_peak(std::span<const Complex> spectrum, double sample_rate_hz,
                              bool interpolate = false);

/// Maps DFT index k in [0, n_fft) to the signed bin.
inline long long signed_bin(std::size_t k, std::size_t n_fft) {
    return 2 * k > n_fft ? static_cast<long long>(k) - static_cast<long long>(n_fft)
                         : static_cast<long long>(k);
}

}  // namespace dfmcw
