#include "dfmcw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dfmcw/rng.hpp"
#include "dfmcw/sensing.hpp"
#include "dfmcw/waveform.hpp"

namespace dfmcw {

std::string_view to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::rmse_vs_speed: return "rmse_vs_speed";
        case SweepKind::rmse_vs_distance: return "rmse_vs_distance";
        case SweepKind::ber: return "ber";
        case SweepKind::sampling_rate: return "sampling_rate";
        case SweepKind::data_rate: return "data_rate";
    }
    return "unknown";
}

double ExperimentRow::label(std::string_view name) const {
    for (const auto& [key, value] : labels) {
        if (key == name) return value;
    }
    throw std::out_of_range("row has no label '" + std::string(name) + "'");
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

namespace {

void check_plan(const SweepPlan& plan) {
    if (plan.grid.empty()) throw std::invalid_argument("sweep grid is empty");
    if (plan.snr_grid_db.empty()) throw std::invalid_argument("SNR grid is empty");
    if (plan.trials == 0) throw std::invalid_argument("trials must be >= 1");
}

std::vector<std::pair<std::string, double>> scenario_labels(const ScenarioPoint& point,
                                                            const DerivedParams& derived,
                                                            double snr_db) {
    return {{"r0_m", point.target.range_m},
            {"v0_mps", point.target.speed_mps},
            {"snr_db", snr_db},
            {"r_max_m", derived.max_range_m},
            {"v_max_mps", derived.max_speed_mps},
            {"a", derived.protection_factor},
            {"r_res_m", derived.range_resolution_m}};
}

}  // namespace

std::vector<ExperimentRow> rmse_sweep(const SweepPlan& plan) {
    if (plan.kind != SweepKind::rmse_vs_speed && plan.kind != SweepKind::rmse_vs_distance) {
        throw std::invalid_argument("rmse_sweep needs an rmse_vs_speed or rmse_vs_distance plan");
    }
    check_plan(plan);

    std::vector<std::unique_ptr<SensingReceiver>> receivers;
    receivers.reserve(plan.grid.size());
    for (const auto& point : plan.grid) {
        receivers.push_back(std::make_unique<SensingReceiver>(derive(point.config)));
    }

    const std::size_t n_snr = plan.snr_grid_db.size();
    const std::size_t n_points = plan.grid.size() * n_snr;
    const std::size_t trials = plan.trials;
    std::vector<double> range_err(n_points * trials);
    std::vector<double> speed_err(n_points * trials);

    parallel_for(n_points * trials, plan.threads, [&](std::size_t item) {
        const std::size_t p = item / trials;
        const std::size_t trial = item % trials;
        const auto& point = plan.grid[p / n_snr];
        const NoiseSpec noise{plan.snr_grid_db[p % n_snr],
                              stable_hash(plan.master_seed, p / n_snr, trial)};
        try {
            const auto est = receivers[p / n_snr]->sense(point.target, noise);
            range_err[item] = est.range_m - point.target.range_m;
            speed_err[item] = est.speed_mps - point.target.speed_mps;
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep point " + std::to_string(p) + " (r0=" +
                                     std::to_string(point.target.range_m) + " m, v0=" +
                                     std::to_string(point.target.speed_mps) + " m/s, trial " +
                                     std::to_string(trial) + "): " + e.what());
        }
    });

    std::vector<ExperimentRow> rows;
    for (std::size_t p = 0; p < n_points; ++p) {
        const auto& point = plan.grid[p / n_snr];
        double sq_r = 0.0, sq_v = 0.0, sum_r = 0.0, sum_v = 0.0;
        for (std::size_t i = 0; i < trials; ++i) {
            const double er = range_err[p * trials + i];
            const double ev = speed_err[p * trials + i];
            sq_r += er * er;
            sq_v += ev * ev;
            sum_r += er;
            sum_v += ev;
        }
        const double n = static_cast<double>(trials);
        const auto labels =
            scenario_labels(point, receivers[p / n_snr]->derived(), plan.snr_grid_db[p % n_snr]);
        rows.push_back({labels, "rmse_r_m", std::sqrt(sq_r / n), plan.trials, plan.master_seed});
        rows.push_back({labels, "rmse_v_mps", std::sqrt(sq_v / n), plan.trials, plan.master_seed});
        rows.push_back({labels, "mean_err_r_m", sum_r / n, plan.trials, plan.master_seed});
        rows.push_back({labels, "mean_err_v_mps", sum_v / n, plan.trials, plan.master_seed});
    }
    return rows;
}

std::vector<ExperimentRow> ber_sweep(const SweepPlan& plan,
                                     std::span<const CompensationResidual> residuals) {
    if (plan.kind != SweepKind::ber) throw std::invalid_argument("ber_sweep needs a ber plan");
    check_plan(plan);
    if (residuals.empty()) throw std::invalid_argument("no compensation scenarios given");

    std::vector<DerivedParams> derived;
    std::vector<std::unique_ptr<SymbolDetector>> detectors;
    for (const auto& point : plan.grid) {
        derived.push_back(derive(point.config));
        detectors.push_back(std::make_unique<SymbolDetector>(derived.back()));
    }

    const std::size_t n_snr = plan.snr_grid_db.size();
    const std::size_t n_res = residuals.size();
    const std::size_t n_points = plan.grid.size() * n_snr * n_res;
    const std::size_t bits_per_point = plan.trials;
    const std::size_t blocks = (bits_per_point + kBerBlockBits - 1) / kBerBlockBits;
    std::vector<std::uint64_t> block_errors(n_points * blocks, 0);

    // p enumerates (grid, snr, residual) with the residual fastest. Seeds depend
    // on the grid point and block only, so SNRs and residuals are paired.
    parallel_for(n_points * blocks, plan.threads, [&](std::size_t item) {
        const std::size_t p = item / blocks;
        const std::size_t block = item % blocks;
        const std::size_t g = p / (n_snr * n_res);
        const double snr_db = plan.snr_grid_db[(p / n_res) % n_snr];
        const auto& residual = residuals[p % n_res];

        const std::size_t n_bits =
            std::min(kBerBlockBits, bits_per_point - block * kBerBlockBits);
        const std::uint64_t seed = stable_hash(plan.master_seed, g, block);
        NormalSource source(seed);
        std::vector<std::uint8_t> bits(n_bits);
        for (auto& b : bits) b = static_cast<std::uint8_t>(source.raw() >> 63);

        const ChirpTrain train(bits, derived[g]);
        auto rx = apply_residual(train, residual);
        add_awgn_in_place(rx, {snr_db, stable_hash(seed, 1, 0)});
        const auto decided = detectors[g]->demodulate(rx.samples, n_bits);

        std::uint64_t errors = 0;
        for (std::size_t i = 0; i < n_bits; ++i) errors += decided[i] != bits[i];
        block_errors[item] = errors;
    });

    std::vector<ExperimentRow> rows;
    for (std::size_t p = 0; p < n_points; ++p) {
        const std::size_t g = p / (n_snr * n_res);
        const double snr_db = plan.snr_grid_db[(p / n_res) % n_snr];
        const auto& residual = residuals[p % n_res];
        std::uint64_t errors = 0;
        for (std::size_t b = 0; b < blocks; ++b) errors += block_errors[p * blocks + b];
        ExperimentRow row;
        row.labels = {{"snr_db", snr_db},
                      {"delay_residual_s", residual.delay_s},
                      {"doppler_residual_hz", residual.doppler_hz},
                      {"r_max_m", derived[g].max_range_m},
                      {"a", derived[g].protection_factor},
                      {"errors", static_cast<double>(errors)}};
        row.metric = "ber";
        row.value = static_cast<double>(errors) / static_cast<double>(bits_per_point);
        row.trials = bits_per_point;
        row.seed = plan.master_seed;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ExperimentRow> sampling_rate_table(std::span<const double> range_resolutions_m,
                                               std::span<const double> max_speeds_mps,
                                               double protection_factor,
                                               const SystemConfig& base) {
    if (range_resolutions_m.empty() || max_speeds_mps.empty()) {
        throw std::invalid_argument("sampling-rate grids must be non-empty");
    }
    std::vector<ExperimentRow> rows;
    for (const double r_res : range_resolutions_m) {
        for (const double v_max : max_speeds_mps) {
            SystemConfig config = base;
            config.bandwidth_hz.reset();
            config.range_resolution_m = r_res;
            config.max_speed_mps = v_max;
            config.protection_factor = protection_factor;
            const auto d = derive(config);
            rows.push_back({{{"r_res_m", r_res},
                             {"v_max_mps", v_max},
                             {"a", protection_factor},
                             {"r_max_m", d.max_range_m},
                             {"B_c_hz", d.bandwidth_hz}},
                            "f_s_hz",
                            d.sample_rate_hz,
                            1,
                            base.master_seed});
        }
    }
    return rows;
}

std::vector<ExperimentRow> data_rate_table(std::span<const double> max_ranges_m,
                                           std::span<const double> protection_factors,
                                           const SystemConfig& base) {
    if (max_ranges_m.empty() || protection_factors.empty()) {
        throw std::invalid_argument("data-rate grids must be non-empty");
    }
    std::vector<ExperimentRow> rows;
    for (const double a : protection_factors) {
        for (const double r_max : max_ranges_m) {
            SystemConfig config = base;
            config.max_range_m = r_max;
            config.protection_factor = a;
            const auto d = derive(config);
            rows.push_back({{{"r_max_m", r_max}, {"a", a}, {"T_sym_s", d.symbol_duration_s}},
                            "data_rate_bps",
                            d.data_rate_bps,
                            1,
                            base.master_seed});
        }
    }
    return rows;
}

}  // namespace dfmcw
