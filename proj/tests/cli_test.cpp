#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dfmcw::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = "") {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string without_first_line(const std::string& s) { return s.substr(s.find('\n') + 1); }

}  // namespace

TEST(Cli, RatesTableContainsReferenceRows) {
    const auto r = run({"rates", "--set", "r_max_grid=100,500", "--set", "a_grid=1,5.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("# tool=dfmcw version=", 0), 0u);
    EXPECT_NE(r.out.find("r_max_m,a,T_sym_s,metric,value,trials,seed"), std::string::npos);
    EXPECT_NE(r.out.find("500,5.5,"), std::string::npos);
    EXPECT_NE(r.out.find("data_rate_bps,54507.7"), std::string::npos);
    EXPECT_NE(r.out.find("data_rate_bps,1498962"), std::string::npos);
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, RcsOnsetColumnReadsTwoPointTwoMillimetres) {
    const auto r = run({"rcs", "--set", "radius_grid=0.001,0.003"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("onset_radius_m"), std::string::npos);
    EXPECT_NE(r.out.find(",0.0022246"), std::string::npos);
}

TEST(Cli, SenseWritesSingleRow) {
    const auto r = run({"sense", "--set", "r0=300", "--set", "v0=7000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto body = without_first_line(r.out);
    EXPECT_EQ(body.substr(0, body.find('\n')),
              "r0_m,v0_mps,snr_db,r0_hat_m,v0_hat_mps,f_up_hz,f_down_hz");
    EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 2);
}

TEST(Cli, SenseDumpWritesEchoes) {
    const auto prefix = (std::filesystem::temp_directory_path() / "dfmcw_cli_dump").string();
    const auto r = run({"sense", "--set", "snr_db=0", "--dump", prefix});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(prefix + "_up.bin"));
    EXPECT_TRUE(std::filesystem::exists(prefix + "_down.bin"));
    std::filesystem::remove(prefix + "_up.bin");
    std::filesystem::remove(prefix + "_down.bin");
}

TEST(Cli, SweepIsDeterministicAcrossRunsAndThreads) {
    const auto config = temp_file("dfmcw_cli_sweep.cfg",
                                  "# small sweep\nr_max = 50\nr0_grid = 30\nv0_grid = 0,5000\n"
                                  "snr_grid = -20,-10\ntrials = 8\n");
    const auto out1 = temp_file("dfmcw_cli_sweep1.csv");
    const auto out2 = temp_file("dfmcw_cli_sweep2.csv");
    ASSERT_EQ(run({"sweep", "--config", config.string(), "--seed", "42", "--out", out1.string()}).code, 0);
    ASSERT_EQ(run({"sweep", "--config", config.string(), "--seed", "42", "--threads", "3", "--out",
                   out2.string()}).code, 0);
    EXPECT_EQ(read_file(out1), read_file(out2));
    EXPECT_NE(read_file(out1).find("seed=42"), std::string::npos);
    const auto other = run({"sweep", "--config", config.string(), "--seed", "43"});
    EXPECT_NE(without_first_line(other.out), without_first_line(read_file(out1)));
    for (const auto& p : {config, out1, out2}) std::filesystem::remove(p);
}

TEST(Cli, BerSmallRun) {
    const auto r = run({"ber", "--set", "r_max=50", "--set", "bits=64", "--set", "ber_snr_grid=-10",
                        "--set", "residual_delays=0", "--set", "residual_dopplers=0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("ber,0,64,"), std::string::npos);
}

TEST(Cli, SamplingTable) {
    const auto r = run({"sampling", "--set", "r_res_grid=0.1", "--set", "v_max_grid=15000"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("f_s_hz,1.1582"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitOneAndNameTheKey) {
    auto r = run({"rates", "--set", "bogus=1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("bogus"), std::string::npos);
    EXPECT_TRUE(r.out.empty());

    r = run({"rates", "--set", "a=0.5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("a:"), std::string::npos);

    r = run({"rates", "--config", "/nonexistent/dfmcw.cfg"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("config"), std::string::npos);

    r = run({"rates", "--set", "r_res=0.1", "--set", "B_c=1e9"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("B_c"), std::string::npos);

    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
}

TEST(Cli, RuntimeErrorsExitTwo) {
    // target beyond the unambiguous window
    const auto r = run({"sense", "--set", "r0=5000"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ProvenanceHashIgnoresSeedAndThreads) {
    const auto a = run({"rates", "--seed", "1"});
    const auto b = run({"rates", "--seed", "2", "--threads", "4"});
    const auto hash = [](const std::string& s) {
        const auto at = s.find("config_hash=");
        return s.substr(at, 28);
    };
    EXPECT_EQ(hash(a.out), hash(b.out));
    const auto c = run({"rates", "--set", "a=2"});
    EXPECT_NE(hash(a.out), hash(c.out));
}

TEST(Cli, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("sweep"), std::string::npos);
}
