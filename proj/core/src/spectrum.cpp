#include "dfmcw/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dfmcw {

namespace {

static_assert(sizeof(Complex) == sizeof(fftw_complex));

// fftw planning is not thread safe, execution with the new-array interface is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(n); it != plans_.end()) return it->second;
        auto* in = fftw_alloc_complex(n);
        auto* out = fftw_alloc_complex(n);
        if (in == nullptr || out == nullptr) throw std::bad_alloc();
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        if (plan == nullptr) throw std::runtime_error("fftw could not plan a DFT");
        plans_.emplace(n, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

std::vector<Complex> forward_dft(std::span<const Complex> input, std::size_t n_fft) {
    if (input.empty()) throw std::invalid_argument("DFT input is empty");
    if (n_fft < input.size()) throw std::invalid_argument("DFT size smaller than input");
    if (n_fft > static_cast<std::size_t>(1) << 30) throw std::invalid_argument("DFT too large");

    std::vector<Complex> padded(n_fft, Complex{0.0, 0.0});
    std::copy(input.begin(), input.end(), padded.begin());
    std::vector<Complex> spectrum(n_fft);
    fftw_execute_dft(plan_cache().get(n_fft), reinterpret_cast<fftw_complex*>(padded.data()),
                     reinterpret_cast<fftw_complex*>(spectrum.data()));
    return spectrum;
}

SpectralPeak periodogram_peak(std::span<const Complex> spectrum, double sample_rate_hz,
                              bool interpolate) {
    const std::size_t n_fft = spectrum.size();
    if (n_fft == 0) throw std::invalid_argument("empty spectrum");

    std::size_t best = 0;
    double best_power = -1.0;
    for (std::size_t k = 0; k < n_fft; ++k) {
        const double p = std::norm(spectrum[k]);
        if (p > best_power) {
            best = k;
            best_power = p;
        } else if (p == best_power &&
                   std::llabs(signed_bin(k, n_fft)) < std::llabs(signed_bin(best, n_fft))) {
            best = k;
        }
    }
    if (!(best_power > 0.0)) throw std::invalid_argument("spectrum has no peak (all zero)");

    SpectralPeak peak;
    peak.bin = signed_bin(best, n_fft);
    peak.power = best_power;
    const double bin_hz = sample_rate_hz / static_cast<double>(n_fft);
    double offset = 0.0;
    if (interpolate && n_fft >= 3) {
        const double left = std::norm(spectrum[(best + n_fft - 1) % n_fft]);
        const double right = std::norm(spectrum[(best + 1) % n_fft]);
        if (left > 0.0 && right > 0.0) {
            const double a = std::log(left);
            const double b = std::log(best_power);
            const double c = std::log(right);
            const double denom = a - 2.0 * b + c;
            if (denom < 0.0) offset = 0.5 * (a - c) / denom;
        }
    }
    peak.frequency_hz = (static_cast<double>(peak.bin) + offset) * bin_hz;
    return peak;
}

}  // namespace dfmcw
