#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dfmcw/channel.hpp"
#include "dfmcw/comm.hpp"
#include "dfmcw/params.hpp"

namespace dfmcw {

enum class SweepKind { rmse_vs_speed, rmse_vs_distance, ber, sampling_rate, data_rate };

std::string_view to_string(SweepKind kind);

/// One fully bound scenario of a sweep.
struct ScenarioPoint {
    SystemConfig config;
    TargetState target;
};

struct SweepPlan {
    SweepKind kind = SweepKind::rmse_vs_speed;
    std::vector<ScenarioPoint> grid;
    std::vector<double> snr_grid_db;
    /// Trials per point for RMSE sweeps, transmitted bits per point for BER.
    std::uint64_t trials = 200;
    std::uint64_t master_seed = 0;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 1;
};

/// One output line: ordered scenario labels, then the metric.
struct ExperimentRow {
    std::vector<std::pair<std::string, double>> labels;
    std::string metric;
    double value = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    double label(std::string_view name) const;
};

inline constexpr std::size_t kBerBlockBits = 32;

/// Runs `body(i)` for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any item is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// RMSE of distance and speed per (grid point, SNR). Trial i at grid point p
/// is seeded with stable_hash(master_seed, p, i) at every SNR, so SNR columns
/// are paired. Emits rows `rmse_r_m`, `rmse_v_mps`, `mean_err_r_m` and
/// `mean_err_v_mps` for every point.
std::vector<ExperimentRow> rmse_sweep(const SweepPlan& plan);

/// BER per (grid point, SNR, residual scenario). Bits are sent in blocks of
/// kBerBlockBits; block b at grid point p draws its bits and noise from
/// stable_hash(master_seed, p, b) for every SNR and residual. Emits `ber` rows
/// labelled with the error count and residuals.
std::vector<ExperimentRow> ber_sweep(const SweepPlan& plan,
                                     std::span<const CompensationResidual> residuals);

/// Sampling rate f_s over a (r_res, v_max) grid at protection factor `a`.
std::vector<ExperimentRow> sampling_rate_table(std::span<const double> range_resolutions_m,
                                               std::span<const double> max_speeds_mps,
                                               double protection_factor,
                                               const SystemConfig& base = reference_config());

/// Symbol duration and data rate over a (r_max, a) grid.
std::vector<ExperimentRow> data_rate_table(std::span<const double> max_ranges_m,
                                           std::span<const double> protection_factors,
                                           const SystemConfig& base = reference_config());

}  // namespace dfmcw
