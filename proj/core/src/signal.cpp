#include "dfmcw/signal.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dfmcw {

void check_signal(const BasebandSignal& signal) {
    if (signal.samples.empty()) throw std::invalid_argument("signal is empty");
    if (!(std::isfinite(signal.sample_rate_hz) && signal.sample_rate_hz > 0.0)) {
        throw std::invalid_argument("signal sample rate must be positive");
    }
    for (const auto& s : signal.samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw std::invalid_argument("signal contains non-finite samples");
        }
    }
}

double mean_power(const BasebandSignal& signal) {
    if (signal.samples.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : signal.samples) acc += std::norm(s);
    return acc / static_cast<double>(signal.samples.size());
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw std::runtime_error("signal dump is truncated");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

}  // namespace

void write_signal(std::ostream& out, const BasebandSignal& signal) {
    check_signal(signal);
    out.write(kSignalMagic, sizeof(kSignalMagic));
    put_le(out, signal.sample_rate_hz);
    put_le(out, static_cast<std::uint64_t>(signal.samples.size()));
    put_le(out, signal.t0_s);
    for (const auto& s : signal.samples) {
        put_le(out, s.real());
        put_le(out, s.imag());
    }
    if (!out) throw std::runtime_error("failed writing signal dump");
}

BasebandSignal read_signal(std::istream& in) {
    char magic[sizeof(kSignalMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kSignalMagic, sizeof(magic)) != 0) {
        throw std::runtime_error("not a signal dump (bad magic)");
    }
    BasebandSignal signal;
    signal.sample_rate_hz = get_le<double>(in);
    const auto n = get_le<std::uint64_t>(in);
    signal.t0_s = get_le<double>(in);
    if (n == 0 || n > (std::uint64_t{1} << 34)) {
        throw std::runtime_error("signal dump has an implausible sample count");
    }
    signal.samples.resize(static_cast<std::size_t>(n));
    for (auto& s : signal.samples) {
        const double re = get_le<double>(in);
        const double im = get_le<double>(in);
        s = {re, im};
    }
    return signal;
}

void write_signal_file(const std::filesystem::path& path, const BasebandSignal& signal) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_signal(out, signal);
}

BasebandSignal read_signal_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_signal(in);
}

}  // namespace dfmcw
