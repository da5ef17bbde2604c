#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dfmcw/sensing.hpp"
#include "test_support.hpp"

using namespace dfmcw;
using dfmcw::testing::beat_pair;
using dfmcw::testing::kC;

namespace {

const DerivedParams& reference() {
    static const DerivedParams d = derive(reference_config());
    return d;
}

BasebandSignal tone(const DerivedParams& d, double f_hz, double amplitude = 1.0) {
    BasebandSignal s;
    s.sample_rate_hz = d.sample_rate_hz;
    s.samples.resize(d.samples_per_ramp);
    for (std::size_t n = 0; n < s.size(); ++n) {
        const double cycles = f_hz * static_cast<double>(n) / d.sample_rate_hz;
        const double frac = cycles - std::round(cycles);
        s.samples[n] = amplitude * Complex(std::cos(2.0 * std::numbers::pi * frac),
                                           std::sin(2.0 * std::numbers::pi * frac));
    }
    return s;
}

}  // namespace

TEST(EstimateTone, BinCentredToneIsExact) {
    const auto& d = reference();
    for (const long long k : {0LL, 1LL, 1234LL, -777LL, 5000LL}) {
        const double f = static_cast<double>(k) * d.freq_bin_hz;
        EXPECT_DOUBLE_EQ(estimate_tone(tone(d, f), 2), f) << "k=" << k;
    }
}

TEST(EstimateTone, NegativeFrequency) {
    const auto& d = reference();
    const double est = estimate_tone(tone(d, -100e6), 2);
    EXPECT_LT(est, 0.0);
    EXPECT_LE(std::abs(est + 100e6), d.freq_bin_hz / 2.0);
}

TEST(EstimateTone, WithinHalfBinForArbitraryTones) {
    const auto& d = reference();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-0.45 * d.sample_rate_hz, 0.45 * d.sample_rate_hz);
    for (int i = 0; i < 40; ++i) {
        const double f = u(gen);
        EXPECT_LE(std::abs(estimate_tone(tone(d, f), 2) - f), d.freq_bin_hz / 2.0 + 1e-6) << f;
    }
}

TEST(EstimateTone, AmplitudeInvariant) {
    const auto& d = reference();
    const double f = 123.4567e6;
    EXPECT_EQ(estimate_tone(tone(d, f, 1.0), 2), estimate_tone(tone(d, f, 1e-12), 2));
}

TEST(Invert, ZeroBeatsGiveZero) {
    const auto m = invert(0.0, 0.0, reference(), CarrierCorrection::paper);
    EXPECT_EQ(m.speed_mps, 0.0);
    EXPECT_EQ(m.range_m, 0.0);
}

TEST(Invert, ReferenceTargetExample) {
    const auto& d = reference();
    const auto beats = beat_pair(300.0, 7000.0, d.carrier_hz, d.carrier_hz, d.chirp_rate_hz_per_s);
    EXPECT_NEAR(beats.up_hz, 343.125e6, 0.05e6);
    EXPECT_NEAR(beats.down_hz, -311.391e6, 0.05e6);
    const auto m = invert(beats.up_hz, beats.down_hz, d, CarrierCorrection::paper);
    EXPECT_NEAR(m.speed_mps, 7000.0, 1e-6);
    EXPECT_NEAR(m.range_m, 300.0, 1e-9);
}

TEST(Invert, SymmetricBeatsAreStatic) {
    const auto& d = reference();
    const auto m = invert(80e6, -80e6, d, CarrierCorrection::paper);
    EXPECT_EQ(m.speed_mps, 0.0);
    EXPECT_DOUBLE_EQ(m.range_m, kC * 80e6 / (2.0 * d.chirp_rate_hz_per_s));
}

TEST(Invert, RoundTripOverTheEnvelope) {
    const auto& d = reference();
    for (double r0 = 1.0; r0 <= 500.0; r0 += 37.0) {
        for (double v0 = -15e3; v0 <= 15e3; v0 += 1250.0) {
            const auto b = beat_pair(r0, v0, d.carrier_hz, d.carrier_hz, d.chirp_rate_hz_per_s);
            const auto m = invert(b.up_hz, b.down_hz, d, CarrierCorrection::paper);
            ASSERT_NEAR(m.range_m, r0, 1e-9 * r0);
            ASSERT_NEAR(m.speed_mps, v0, 1e-9 * std::max(1.0, std::abs(v0)));
        }
    }
}

TEST(Invert, ExactModeRemovesCarrierOffsetFromSpeed) {
    const auto& d = reference();
    for (const double v0 : {-15e3, 7e3, 15e3}) {
        const auto b = beat_pair(300.0, v0, d.carrier_hz, d.carrier_hz + d.bandwidth_hz,
                                 d.chirp_rate_hz_per_s);
        const auto exact = invert(b.up_hz, b.down_hz, d, CarrierCorrection::exact);
        const auto paper = invert(b.up_hz, b.down_hz, d, CarrierCorrection::paper);
        EXPECT_NEAR(exact.speed_mps, v0, 1e-9 * std::abs(v0));
        EXPECT_NEAR(paper.speed_mps - v0, v0 * d.bandwidth_hz / (2.0 * d.carrier_hz),
                    1e-6 * std::abs(v0));
    }
}

TEST(Invert, SingularityThrows) {
    const auto& d = reference();
    const double f = d.carrier_hz;  // v = c / 2
    EXPECT_THROW(invert(f, f, d, CarrierCorrection::paper), std::domain_error);
}

TEST(Dechirp, RejectsMismatch) {
    BasebandSignal a{{Complex{1, 0}, Complex{1, 0}}, 1.0, 0.0};
    BasebandSignal b{{Complex{1, 0}}, 1.0, 0.0};
    BasebandSignal c{{Complex{1, 0}, Complex{1, 0}}, 2.0, 0.0};
    EXPECT_THROW(dechirp(a, b), std::invalid_argument);
    EXPECT_THROW(dechirp(a, c), std::invalid_argument);
    EXPECT_THROW(dechirp(BasebandSignal{{}, 1.0, 0.0}, BasebandSignal{{}, 1.0, 0.0}),
                 std::invalid_argument);
}

TEST(Sense, BinAlignedStaticTargetIsExact) {
    const auto& d = reference();
    // up beat mu * 2 r0 / c on bin 3000
    const double r0 = 3000.0 * d.freq_bin_hz * kC / (2.0 * d.chirp_rate_hz_per_s);
    const SensingReceiver rx(d);
    const auto est = rx.sense({r0, 0.0}, NoiseSpec::noiseless());
    EXPECT_NEAR(est.range_m, r0, 1e-6);
    EXPECT_NEAR(est.speed_mps, 0.0, 1e-6);
}

TEST(Sense, StaticTargetsWithinQuantizationBound) {
    const auto& d = reference();
    const SensingReceiver rx(d);
    const double bound_r = kC / (4.0 * d.chirp_rate_hz_per_s) * d.freq_bin_hz;
    EXPECT_LE(bound_r, 0.025);
    for (double r0 = 5.0; r0 < 500.0; r0 += 41.3) {
        const auto est = rx.sense({r0, 0.0}, NoiseSpec::noiseless());
        EXPECT_LE(std::abs(est.range_m - r0), bound_r + 1e-9) << r0;
        EXPECT_LE(std::abs(est.speed_mps), kC / (4.0 * d.carrier_hz) * 2.0 * d.freq_bin_hz);
    }
}

TEST(Sense, MovingReferenceTargetWithinBiasBounds) {
    const auto& d = reference();
    const SensingReceiver rx(d);
    const auto est = rx.sense({300.0, 7000.0}, NoiseSpec::noiseless());
    EXPECT_LE(std::abs(est.range_m - 300.0), 0.05);
    EXPECT_LE(std::abs(est.speed_mps - 7000.0), 30.0);
    // signed beats follow the forward model to within a bin plus the quadratic-phase drift
    const auto b = beat_pair(300.0, 7000.0, d.carrier_hz, d.carrier_hz + d.bandwidth_hz,
                             d.chirp_rate_hz_per_s);
    EXPECT_GT(est.beat_up_hz, 0.0);
    EXPECT_LT(est.beat_down_hz, 0.0);
    EXPECT_NEAR(est.beat_up_hz, b.up_hz, 2.0 * d.freq_bin_hz);
    EXPECT_NEAR(est.beat_down_hz, b.down_hz, 2.0 * d.freq_bin_hz);
}

TEST(Sense, MovingTargetsWithinQuantizationPlusBiasBounds) {
    const auto& d = reference();
    const SensingReceiver rx(d);
    const double dr = kC / (4.0 * d.chirp_rate_hz_per_s) * d.freq_bin_hz;
    const double dv = kC / (4.0 * d.carrier_hz) * 2.0 * d.freq_bin_hz;
    for (const double v0 : {-15e3, -3e3, 1e3, 7e3, 15e3}) {
        for (const double r0 : {50.0, 300.0, 450.0}) {
            const auto est = rx.sense({r0, v0}, NoiseSpec::noiseless());
            // quadratic-phase drift adds v0 T_ramp, the paper-mode carrier offset removes half
            const double bias_r = std::abs(v0) * d.ramp_duration_s / 2.0;
            const double bias_v = std::abs(v0) * d.bandwidth_hz / (2.0 * d.carrier_hz);
            EXPECT_LE(std::abs(est.range_m - r0), dr + bias_r + 1e-9) << r0 << "," << v0;
            EXPECT_LE(std::abs(est.speed_mps - v0), dv + bias_v + 1e-9) << r0 << "," << v0;
        }
    }
}

TEST(Sense, ExactModeTightensSpeed) {
    auto config = reference_config();
    config.carrier_correction = CarrierCorrection::exact;
    const auto d = derive(config);
    const SensingReceiver rx(d);
    const auto est = rx.sense({300.0, 15e3}, NoiseSpec::noiseless());
    EXPECT_LE(std::abs(est.speed_mps - 15e3), kC / (4.0 * d.carrier_hz) * 2.0 * d.freq_bin_hz);
}

TEST(Sense, AmplitudeInvariant) {
    const auto d = derive(dfmcw::testing::small_config());
    const SensingReceiver rx(d);
    for (const double snr : {std::numeric_limits<double>::infinity(), -10.0}) {
        const NoiseSpec noise{snr, 99};
        const auto a = rx.sense({30.0, 2e3}, noise, 1.0);
        const auto b = rx.sense({30.0, 2e3}, noise, 2.2e-12);
        EXPECT_EQ(a.beat_up_hz, b.beat_up_hz);
        EXPECT_EQ(a.beat_down_hz, b.beat_down_hz);
    }
}

TEST(Sense, DeterministicAndMatchesFreeFunction) {
    const auto config = dfmcw::testing::small_config();
    const SensingReceiver rx(derive(config));
    const NoiseSpec noise{-5.0, 1234};
    const auto a = rx.sense({20.0, -4e3}, noise);
    const auto b = sense({20.0, -4e3}, noise, config);
    EXPECT_EQ(a.range_m, b.range_m);
    EXPECT_EQ(a.speed_mps, b.speed_mps);
}

TEST(Sense, TraceCapturesEchoes) {
    const SensingReceiver rx(derive(dfmcw::testing::small_config()));
    SenseTrace trace;
    rx.sense({20.0, 0.0}, {0.0, 1}, 1.0, &trace);
    EXPECT_EQ(trace.up_echo.size(), rx.derived().samples_per_ramp);
    EXPECT_EQ(trace.down_echo.size(), rx.derived().samples_per_ramp);
}

TEST(Sense, DeepNoiseDegradesGracefully) {
    const SensingReceiver rx(reference());
    EXPECT_NO_THROW(rx.sense({300.0, 7000.0}, {-40.0, 5}));
}

TEST(Sense, MedianErrorImprovesWithSnr) {
    const SensingReceiver rx(derive(dfmcw::testing::small_config()));
    auto median_error = [&](double snr) {
        std::vector<double> errors;
        for (std::uint64_t trial = 0; trial < 101; ++trial) {
            const auto est = rx.sense({30.0, 5e3}, {snr, trial});
            errors.push_back(std::abs(est.range_m - 30.0));
        }
        std::nth_element(errors.begin(), errors.begin() + 50, errors.end());
        return errors[50];
    };
    const double at_minus30 = median_error(-30.0);
    const double at_minus10 = median_error(-10.0);
    EXPECT_LE(at_minus10, at_minus30);
}
