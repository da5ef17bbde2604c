#pragma once

namespace dfmcw {

/// Linear fits of the transition region of the normalized RCS curve,
/// evaluated as min(a0 x + b0, c0 x + d0, e0 x + f0).
struct FitCoefficients {
    double a0, b0;
    double c0, d0;
    double e0, f0;
};

inline constexpr FitCoefficients kSizeEstimationFit{
    11.0346, -11.2369,
    4.9409,  -4.8158,
    157.2653, -45.6594,
};

/// Normalized radius above which the optical (geometric) branch applies.
inline constexpr double kOpticalOnset = 2.523;
/// Normalized radius below which the Rayleigh branch applies.
inline constexpr double kRayleighLimit = 0.1876;
/// Lower clamp for the transition fit, which goes negative for x below ~1.02.
inline constexpr double kRcsFloor = 1e-12;

enum class RcsRegime { rayleigh, transition, optical };

struct RcsQuery {
    double radius_m = 0.0;
    double wavelength_m = 0.0;
    double normalized_radius = 0.0;  // x = r / lambda
    double normalized_rcs = 0.0;     // sigma / lambda^2
    double rcs_m2 = 0.0;
    RcsRegime regime = RcsRegime::optical;
};

RcsRegime rcs_regime(double normalized_radius);

/// Piecewise normalized RCS of a sphere as a function of x = r / lambda.
/// Throws std::invalid_argument for x <= 0.
double normalized_rcs(double normalized_radius,
                      const FitCoefficients& fit = kSizeEstimationFit);

/// RCS in m^2 of a sphere of radius `radius_m` at wavelength `wavelength_m`.
double rcs(double radius_m, double wavelength_m);

RcsQuery evaluate_rcs(double radius_m, double wavelength_m,
                      const FitCoefficients& fit = kSizeEstimationFit);

/// Smallest radius that falls in the optical regime.
double optical_threshold_radius(double wavelength_m);

/// One-way free-space amplitude gain c / (4 pi f_c R).
double fspl_comm(double carrier_hz, double distance_m);

/// Two-way amplitude gain of a monostatic echo off a target with RCS `sigma_m2`.
double sensing_amplitude(double carrier_hz, double range_m, double sigma_m2);

}  // namespace dfmcw
