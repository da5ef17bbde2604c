#include "dfmcw/comm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfmcw {

namespace {

void check_residual(const CompensationResidual& residual, double symbol_duration_s) {
    if (!std::isfinite(residual.delay_s) || !std::isfinite(residual.doppler_hz)) {
        throw std::invalid_argument("compensation residual must be finite");
    }
    if (std::abs(residual.delay_s) >= symbol_duration_s) {
        throw std::invalid_argument("residual delay must stay below one symbol duration");
    }
}

}  // namespace

BasebandSignal apply_residual(const ChirpTrain& tx, const CompensationResidual& residual) {
    check_residual(residual, 2.0 * tx.ramp_slot_s());
    if (residual.delay_s == 0.0) {
        auto out = tx.sampled();
        if (residual.doppler_hz != 0.0) {
            for (std::size_t n = 0; n < out.samples.size(); ++n) {
                out.samples[n] *= cis_cycles(residual.doppler_hz * out.time_at(n));
            }
        }
        return out;
    }

    BasebandSignal out;
    out.sample_rate_hz = tx.sample_rate_hz();
    out.samples.resize(tx.total_samples());
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
        const double t = out.time_at(n);
        const auto value = tx.at_sample(n, residual.delay_s);
        out.samples[n] = value.baseband *
                         cis_cycles(residual.doppler_hz * t - value.reference_hz * residual.delay_s);
    }
    return out;
}

BasebandSignal apply_residual(const BasebandSignal& signal, const CompensationResidual& residual,
                              double reference_hz, double symbol_duration_s) {
    check_signal(signal);
    check_residual(residual, symbol_duration_s);
    const auto shift = std::llround(residual.delay_s * signal.sample_rate_hz);
    const auto n_total = static_cast<long long>(signal.size());

    BasebandSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.t0_s = signal.t0_s;
    out.samples.assign(signal.size(), Complex{0.0, 0.0});
    const Complex rotation = cis_cycles(-reference_hz * residual.delay_s);
    for (long long n = 0; n < n_total; ++n) {
        const long long src = n - shift;
        if (src < 0 || src >= n_total) continue;
        const double t = out.time_at(static_cast<std::size_t>(n));
        out.samples[static_cast<std::size_t>(n)] = signal.samples[static_cast<std::size_t>(src)] *
                                                   rotation *
                                                   cis_cycles(residual.doppler_hz * t);
    }
    return out;
}

SymbolDetector::SymbolDetector(const DerivedParams& derived)
    : templates_{dfmcw::symbol_samples(0, derived).samples,
                 dfmcw::symbol_samples(1, derived).samples} {}

SymbolScores SymbolDetector::scores(std::span<const Complex> rx) const {
    const std::size_t n = symbol_samples();
    if (rx.size() != n) {
        throw std::invalid_argument("symbol window has " + std::to_string(rx.size()) +
                                    " samples, expected " + std::to_string(n));
    }
    Complex acc0{0.0, 0.0};
    Complex acc1{0.0, 0.0};
    const auto& ref0 = templates_[0];
    const auto& ref1 = templates_[1];
    for (std::size_t i = 0; i < n; ++i) {
        acc0 += rx[i] * std::conj(ref0[i]);
        acc1 += rx[i] * std::conj(ref1[i]);
    }
    const double norm = static_cast<double>(n);
    return {std::abs(acc0) / norm, std::abs(acc1) / norm};
}

int SymbolDetector::detect(std::span<const Complex> rx) const {
    const auto k = scores(rx);
    return k.k1 > k.k0 ? 1 : 0;
}

std::vector<std::uint8_t> SymbolDetector::demodulate(std::span<const Complex> rx,
                                                     std::size_t n_bits) const {
    const std::size_t n = symbol_samples();
    if (rx.size() != n_bits * n) {
        throw std::invalid_argument("received stream has " + std::to_string(rx.size()) +
                                    " samples, expected " + std::to_string(n_bits * n));
    }
    std::vector<std::uint8_t> bits(n_bits);
    for (std::size_t b = 0; b < n_bits; ++b) {
        bits[b] = static_cast<std::uint8_t>(detect(rx.subspan(b * n, n)));
    }
    return bits;
}

int detect_symbol(const BasebandSignal& rx, const DerivedParams& derived) {
    return SymbolDetector(derived).detect(rx.samples);
}

std::vector<std::uint8_t> demodulate(const BasebandSignal& rx, std::size_t n_bits,
                                     const DerivedParams& derived) {
    return SymbolDetector(derived).demodulate(rx.samples, n_bits);
}

}  // namespace dfmcw
