#pragma once

#include <cstdint>
#include <random>

namespace dfmcw {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of trial `trial` at sweep point `point`:
///   mix64(mix64(mix64(master) ^ point) ^ trial)
/// Platform independent, so sweeps reproduce bit-for-bit anywhere.
constexpr std::uint64_t stable_hash(std::uint64_t master, std::uint64_t point,
                                    std::uint64_t trial) noexcept {
    return mix64(mix64(mix64(master) ^ point) ^ trial);
}

/// Standard normal variates from mt19937_64 via the Box-Muller transform.
/// std::normal_distribution is implementation-defined, this is not.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double next();

    /// Uniform on (0, 1], 53 bits.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dfmcw
