#include "dfmcw/rcs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dfmcw/constants.hpp"

namespace dfmcw {

namespace {

void require_positive(double value, const char* what) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

RcsRegime rcs_regime(double x) {
    if (x > kOpticalOnset) return RcsRegime::optical;
    if (x < kRayleighLimit) return RcsRegime::rayleigh;
    return RcsRegime::transition;
}

double normalized_rcs(double x, const FitCoefficients& fit) {
    require_positive(x, "normalized radius");
    switch (rcs_regime(x)) {
        case RcsRegime::optical:
            return x * x / (4.0 * kPi);
        case RcsRegime::rayleigh: {
            const double x3 = x * x * x;
            return 9.0 * kPi * kPi * x3 * x3 / 4.0;
        }
        case RcsRegime::transition:
            break;
    }
    const double line = std::min({fit.a0 * x + fit.b0, fit.c0 * x + fit.d0, fit.e0 * x + fit.f0});
    return std::max(line, kRcsFloor);
}

double rcs(double radius_m, double wavelength_m) {
    require_positive(radius_m, "radius");
    require_positive(wavelength_m, "wavelength");
    return normalized_rcs(radius_m / wavelength_m) * wavelength_m * wavelength_m;
}

RcsQuery evaluate_rcs(double radius_m, double wavelength_m, const FitCoefficients& fit) {
    require_positive(radius_m, "radius");
    require_positive(wavelength_m, "wavelength");
    RcsQuery q;
    q.radius_m = radius_m;
    q.wavelength_m = wavelength_m;
    q.normalized_radius = radius_m / wavelength_m;
    q.regime = rcs_regime(q.normalized_radius);
    q.normalized_rcs = normalized_rcs(q.normalized_radius, fit);
    q.rcs_m2 = q.normalized_rcs * wavelength_m * wavelength_m;
    return q;
}

double optical_threshold_radius(double wavelength_m) {
    require_positive(wavelength_m, "wavelength");
    return kOpticalOnset * wavelength_m;
}

double fspl_comm(double carrier_hz, double distance_m) {
    require_positive(carrier_hz, "carrier frequency");
    require_positive(distance_m, "distance");
    return kSpeedOfLight / (4.0 * kPi * carrier_hz * distance_m);
}

double sensing_amplitude(double carrier_hz, double range_m, double sigma_m2) {
    require_positive(carrier_hz, "carrier frequency");
    require_positive(range_m, "range");
    if (!(std::isfinite(sigma_m2) && sigma_m2 >= 0.0)) {
        throw std::invalid_argument("RCS must be non-negative and finite");
    }
    const double one_way = kSpeedOfLight / (4.0 * kPi * carrier_hz * range_m);
    return one_way * std::sqrt(sigma_m2 / (4.0 * kPi * range_m * range_m));
}

}  // namespace dfmcw
