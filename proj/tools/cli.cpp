#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dfmcw/config.hpp"
#include "dfmcw/csv.hpp"
#include "dfmcw/experiments.hpp"
#include "dfmcw/rcs.hpp"
#include "dfmcw/sensing.hpp"

#ifndef DFMCW_VERSION
#define DFMCW_VERSION "unknown"
#endif

namespace dfmcw::cli {
namespace {

constexpr double kDefaultBandwidthHz = 1.5e9;

std::vector<double> range_list(double start, double step, double stop) {
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = start + step * i;
        if (v > stop + 1e-9 * std::abs(step)) break;
        out.push_back(v);
    }
    return out;
}

// Everything a subcommand may read from the config file. Keys not listed in
// apply_system_key land here.
struct Scenario {
    SystemConfig system;

    double r0_m = 300.0;
    double v0_mps = 7000.0;
    double snr_db = std::numeric_limits<double>::infinity();

    std::string sweep_kind = "speed";
    std::vector<double> r0_grid_m{300.0};
    std::vector<double> v0_grid_mps{7000.0, 15000.0};
    std::vector<double> snr_grid_db = range_list(-30.0, 1.0, 0.0);
    std::uint64_t trials = 200;

    std::uint64_t bits = 10000;
    std::vector<double> ber_snr_grid_db = range_list(-45.0, 1.0, -30.0);
    std::vector<double> residual_delays_s{0.0, 1.67e-9, 0.0};
    std::vector<double> residual_dopplers_hz{0.0, 0.0, 0.227e6};

    std::vector<double> r_max_grid_m{100.0, 200.0, 500.0, 1000.0, 2000.0};
    std::vector<double> a_grid{1.0, 5.5};
    std::vector<double> r_res_grid_m{0.001, 0.01, 0.1};
    std::vector<double> v_max_grid_mps = range_list(1000.0, 1000.0, 15000.0);
    std::vector<double> radius_grid_m{1e-4, 5e-4, 1e-3, 2e-3, 3e-3, 5e-3, 1e-2, 5e-2, 0.1};
};

bool apply_scenario_key(Scenario& s, const ConfigEntry& e) {
    const std::string& k = e.key;
    if (k == "r0") s.r0_m = parse_double(e);
    else if (k == "v0") s.v0_mps = parse_double(e);
    else if (k == "snr_db") s.snr_db = parse_double(e);
    else if (k == "sweep_kind") {
        if (e.value != "speed" && e.value != "distance") {
            throw ConfigError(k, "expected speed or distance, got '" + e.value + "'");
        }
        s.sweep_kind = e.value;
    } else if (k == "r0_grid") s.r0_grid_m = parse_double_list(e);
    else if (k == "v0_grid") s.v0_grid_mps = parse_double_list(e);
    else if (k == "snr_grid") s.snr_grid_db = parse_double_list(e);
    else if (k == "trials") s.trials = parse_u64(e);
    else if (k == "bits") s.bits = parse_u64(e);
    else if (k == "ber_snr_grid") s.ber_snr_grid_db = parse_double_list(e);
    else if (k == "residual_delays") s.residual_delays_s = parse_double_list(e);
    else if (k == "residual_dopplers") s.residual_dopplers_hz = parse_double_list(e);
    else if (k == "r_max_grid") s.r_max_grid_m = parse_double_list(e);
    else if (k == "a_grid") s.a_grid = parse_double_list(e);
    else if (k == "r_res_grid") s.r_res_grid_m = parse_double_list(e);
    else if (k == "v_max_grid") s.v_max_grid_mps = parse_double_list(e);
    else if (k == "radius_grid") s.radius_grid_m = parse_double_list(e);
    else return false;
    return true;
}

struct Invocation {
    std::string subcommand;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string dump_prefix;
};

struct Resolved {
    Scenario scenario;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

Resolved resolve(const Invocation& inv) {
    std::vector<ConfigEntry> entries;
    if (!inv.config_path.empty()) {
        std::ifstream in(inv.config_path);
        if (!in) throw ConfigError("config", "cannot open '" + inv.config_path + "'");
        entries = parse_config(in);
    }
    for (const auto& o : inv.overrides) entries.push_back(parse_override(o));

    Resolved r;
    r.scenario.system.bandwidth_hz.reset();
    std::map<std::string, std::string> effective;
    for (const auto& e : entries) {
        if (!apply_system_key(r.scenario.system, e) && !apply_scenario_key(r.scenario, e)) {
            throw ConfigError(e.key, "unknown key" +
                                         (e.line > 0 ? " (line " + std::to_string(e.line) + ")"
                                                     : std::string(" (--set)")));
        }
        effective[e.key] = e.value;
    }
    auto& sys = r.scenario.system;
    if (!sys.bandwidth_hz && !sys.range_resolution_m) sys.bandwidth_hz = kDefaultBandwidthHz;
    if (inv.seed) sys.master_seed = *inv.seed;
    r.seed = sys.master_seed;

    std::string canonical;
    for (const auto& [key, value] : effective) {
        if (key == "master_seed") continue;
        canonical += key + "=" + value + "\n";
    }
    r.config_hash = fnv1a64(canonical);

    derive(sys);  // surfaces invariant violations as config errors up front
    return r;
}

Provenance provenance(const Resolved& r, std::string kind) {
    Provenance p;
    p.version = DFMCW_VERSION;
    p.kind = std::move(kind);
    p.config_hash = r.config_hash;
    p.seed = r.seed;
    return p;
}

void cmd_rcs(const Resolved& r, std::ostream& out) {
    const auto d = derive(r.scenario.system);
    const double onset = optical_threshold_radius(d.wavelength_m);
    std::vector<ExperimentRow> rows;
    for (const double radius : r.scenario.radius_grid_m) {
        const auto q = evaluate_rcs(radius, d.wavelength_m);
        rows.push_back({{{"radius_m", radius},
                         {"normalized_radius", q.normalized_radius},
                         {"regime", static_cast<double>(q.regime)},
                         {"normalized_rcs", q.normalized_rcs},
                         {"wavelength_m", d.wavelength_m},
                         {"onset_radius_m", onset}},
                        "rcs_m2",
                        q.rcs_m2,
                        1,
                        r.seed});
    }
    write_csv(out, provenance(r, "rcs"), rows);
}

void cmd_sense(const Resolved& r, const Invocation& inv, std::ostream& out) {
    const auto& s = r.scenario;
    const SensingReceiver receiver(derive(s.system));
    SenseTrace trace;
    const auto est = receiver.sense({s.r0_m, s.v0_mps}, {s.snr_db, r.seed}, 1.0,
                                    inv.dump_prefix.empty() ? nullptr : &trace);
    if (!inv.dump_prefix.empty()) {
        write_signal_file(inv.dump_prefix + "_up.bin", trace.up_echo);
        write_signal_file(inv.dump_prefix + "_down.bin", trace.down_echo);
    }
    write_provenance(out, provenance(r, "sense"));
    out << "r0_m,v0_mps,snr_db,r0_hat_m,v0_hat_mps,f_up_hz,f_down_hz\n"
        << format_value(s.r0_m) << ',' << format_value(s.v0_mps) << ','
        << format_value(s.snr_db) << ',' << format_value(est.range_m) << ','
        << format_value(est.speed_mps) << ',' << format_value(est.beat_up_hz) << ','
        << format_value(est.beat_down_hz) << '\n';
}

void cmd_sweep(const Resolved& r, unsigned threads, std::ostream& out) {
    const auto& s = r.scenario;
    SweepPlan plan;
    plan.kind = s.sweep_kind == "speed" ? SweepKind::rmse_vs_speed : SweepKind::rmse_vs_distance;
    // the swept variable varies fastest
    if (plan.kind == SweepKind::rmse_vs_speed) {
        for (const double r0 : s.r0_grid_m)
            for (const double v0 : s.v0_grid_mps) plan.grid.push_back({s.system, {r0, v0}});
    } else {
        for (const double v0 : s.v0_grid_mps)
            for (const double r0 : s.r0_grid_m) plan.grid.push_back({s.system, {r0, v0}});
    }
    plan.snr_grid_db = s.snr_grid_db;
    plan.trials = s.trials;
    plan.master_seed = r.seed;
    plan.threads = threads;
    const auto rows = rmse_sweep(plan);
    write_csv(out, provenance(r, std::string(to_string(plan.kind))), rows);
}

void cmd_ber(const Resolved& r, unsigned threads, std::ostream& out) {
    const auto& s = r.scenario;
    if (s.residual_delays_s.size() != s.residual_dopplers_hz.size()) {
        throw ConfigError("residual_dopplers", "must have as many entries as residual_delays");
    }
    std::vector<CompensationResidual> residuals;
    for (std::size_t i = 0; i < s.residual_delays_s.size(); ++i) {
        residuals.push_back({s.residual_delays_s[i], s.residual_dopplers_hz[i]});
    }
    SweepPlan plan;
    plan.kind = SweepKind::ber;
    plan.grid.push_back({s.system, {}});
    plan.snr_grid_db = s.ber_snr_grid_db;
    plan.trials = s.bits;
    plan.master_seed = r.seed;
    plan.threads = threads;
    const auto rows = ber_sweep(plan, residuals);
    write_csv(out, provenance(r, "ber"), rows);
}

void cmd_rates(const Resolved& r, std::ostream& out) {
    const auto rows = data_rate_table(r.scenario.r_max_grid_m, r.scenario.a_grid, r.scenario.system);
    write_csv(out, provenance(r, "data_rate"), rows);
}

void cmd_sampling(const Resolved& r, std::ostream& out) {
    const auto rows = sampling_rate_table(r.scenario.r_res_grid_m, r.scenario.v_max_grid_mps,
                                          r.scenario.system.protection_factor, r.scenario.system);
    write_csv(out, provenance(r, "sampling_rate"), rows);
}

void dispatch(const Invocation& inv, std::ostream& out) {
    const auto resolved = resolve(inv);
    const unsigned threads = inv.threads;
    if (inv.subcommand == "rcs") cmd_rcs(resolved, out);
    else if (inv.subcommand == "sense") cmd_sense(resolved, inv, out);
    else if (inv.subcommand == "sweep") cmd_sweep(resolved, threads, out);
    else if (inv.subcommand == "ber") cmd_ber(resolved, threads, out);
    else if (inv.subcommand == "rates") cmd_rates(resolved, out);
    else if (inv.subcommand == "sampling") cmd_sampling(resolved, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Invocation inv;
    CLI::App app{"Triangular FMCW sensing and chirp-polarity communication simulator", "dfmcw"};
    app.set_version_flag("--version", DFMCW_VERSION);
    app.require_subcommand(1, 1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", inv.config_path, "Config file (key = value lines)");
        sub->add_option("--set", inv.overrides, "Override KEY=VALUE, applied after the file")
            ->allow_extra_args(false);
        sub->add_option("--out", inv.out_path, "Write CSV here instead of standard output");
        sub->add_option("--seed", inv.seed, "Master seed (overrides master_seed)");
        sub->add_option("--threads", inv.threads, "Worker threads, 0 = all cores")
            ->check(CLI::NonNegativeNumber);
        sub->callback([&inv, sub] { inv.subcommand = sub->get_name(); });
    };
    add_common(app.add_subcommand("rcs", "RCS of a sphere over a radius grid"));
    auto* sense = app.add_subcommand("sense", "One range/speed estimate");
    add_common(sense);
    sense->add_option("--dump", inv.dump_prefix,
                      "Write the noisy echoes to PREFIX_up.bin and PREFIX_down.bin");
    add_common(app.add_subcommand("sweep", "Distance and speed RMSE over SNR"));
    add_common(app.add_subcommand("ber", "Bit error rate over SNR and compensation residuals"));
    add_common(app.add_subcommand("rates", "Symbol duration and data rate table"));
    add_common(app.add_subcommand("sampling", "Sampling rate table"));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << DFMCW_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "dfmcw: " << e.what() << '\n';
        return kExitConfig;
    }
    if (inv.threads == 0) inv.threads = std::max(1u, std::thread::hardware_concurrency());

    try {
        if (inv.out_path.empty()) {
            dispatch(inv, out);
        } else {
            // Render fully before touching the file so a failed run leaves no partial CSV.
            std::ostringstream buffer;
            dispatch(inv, buffer);
            std::ofstream file(inv.out_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open '" + inv.out_path + "' for writing");
            file << buffer.str();
            if (!file) throw std::runtime_error("failed writing '" + inv.out_path + "'");
        }
    } catch (const ConfigError& e) {
        err << "dfmcw: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "dfmcw: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace dfmcw::cli
