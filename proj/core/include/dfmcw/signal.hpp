#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

namespace dfmcw {

using Complex = std::complex<double>;

/// Uniformly sampled complex baseband buffer. Sample n sits at
/// t0_s + n / sample_rate_hz.
struct BasebandSignal {
    std::vector<Complex> samples;
    double sample_rate_hz = 0.0;
    double t0_s = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
    double time_at(std::size_t n) const noexcept {
        return t0_s + static_cast<double>(n) / sample_rate_hz;
    }
    double duration_s() const noexcept {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
};

/// Throws std::invalid_argument if the buffer is empty, the rate is not
/// positive, or any sample is NaN/Inf.
void check_signal(const BasebandSignal& signal);

/// Mean |s[n]|^2.
double mean_power(const BasebandSignal& signal);

// Signal dump format (little-endian):
//   offset  0  char[8]  magic "DFMCWSIG"
//   offset  8  float64  sample rate (Hz)
//   offset 16  uint64   sample count n
//   offset 24  float64  t0 (s)
//   offset 32  n x (float64 re, float64 im)
inline constexpr char kSignalMagic[8] = {'D', 'F', 'M', 'C', 'W', 'S', 'I', 'G'};
inline constexpr std::size_t kSignalHeaderBytes = 32;

void write_signal(std::ostream& out, const BasebandSignal& signal);
BasebandSignal read_signal(std::istream& in);
void write_signal_file(const std::filesystem::path& path, const BasebandSignal& signal);
BasebandSignal read_signal_file(const std::filesystem::path& path);

}  // namespace dfmcw
