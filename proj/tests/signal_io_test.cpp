#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "dfmcw/signal.hpp"

using namespace dfmcw;

namespace {

BasebandSignal sample_signal() {
    BasebandSignal s;
    s.sample_rate_hz = 1.158956e9;
    s.t0_s = 1.0e-3;
    for (int n = 0; n < 5; ++n) s.samples.emplace_back(0.5 * n, -1.0 / (n + 1));
    return s;
}

}  // namespace

TEST(SignalIo, RoundTripIsExact) {
    const auto s = sample_signal();
    std::stringstream buf;
    write_signal(buf, s);
    const auto back = read_signal(buf);
    EXPECT_EQ(back.samples, s.samples);
    EXPECT_EQ(back.sample_rate_hz, s.sample_rate_hz);
    EXPECT_EQ(back.t0_s, s.t0_s);
}

TEST(SignalIo, LayoutIsLittleEndianWithHeader) {
    const auto s = sample_signal();
    std::stringstream buf;
    write_signal(buf, s);
    const std::string bytes = buf.str();
    ASSERT_EQ(bytes.size(), kSignalHeaderBytes + s.size() * 16);
    EXPECT_EQ(bytes.substr(0, 8), "DFMCWSIG");
    std::uint64_t count = 0;
    for (int i = 7; i >= 0; --i) count = (count << 8) | static_cast<unsigned char>(bytes[16 + i]);
    EXPECT_EQ(count, s.size());
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | static_cast<unsigned char>(bytes[8 + i]);
    double rate = 0.0;
    std::memcpy(&rate, &bits, sizeof rate);
    EXPECT_EQ(rate, s.sample_rate_hz);
}

TEST(SignalIo, RejectsGarbage) {
    std::stringstream bad("NOTASIGNALATALL.................................");
    EXPECT_THROW(read_signal(bad), std::runtime_error);
    const auto s = sample_signal();
    std::stringstream buf;
    write_signal(buf, s);
    std::stringstream truncated(buf.str().substr(0, buf.str().size() - 3));
    EXPECT_THROW(read_signal(truncated), std::runtime_error);
}

TEST(SignalIo, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "dfmcw_signal_io_test.bin";
    write_signal_file(path, sample_signal());
    EXPECT_EQ(read_signal_file(path).samples, sample_signal().samples);
    std::filesystem::remove(path);
}

TEST(Signal, CheckAndPower) {
    auto s = sample_signal();
    EXPECT_NO_THROW(check_signal(s));
    BasebandSignal unit{{Complex{1, 0}, Complex{0, -1}}, 1.0, 0.0};
    EXPECT_DOUBLE_EQ(mean_power(unit), 1.0);
    s.samples[2] = {NAN, 0.0};
    EXPECT_THROW(check_signal(s), std::invalid_argument);
    EXPECT_THROW(check_signal(BasebandSignal{}), std::invalid_argument);
}
