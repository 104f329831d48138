#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subpix/datagen.hpp"
#include "subpix/grid.hpp"

namespace subpix {

/// Accuracy statistics for one (algorithm, PSNR level) cell of a sweep.
/// std_err_px is the population standard deviation of per-trial Euclidean
/// error magnitudes; the per-axis fields are population stds of the signed
/// per-axis errors. Failed trials (flat-surface and similar registration
/// errors) are counted in `failures` and excluded from the statistics.
struct SweepResult {
    std::string algorithm;
    std::optional<double> psnr_db;  // nullopt = clean
    int n = 0;
    int failures = 0;
    double std_err_px = 0.0;
    double mean_abs_err_px = 0.0;
    double max_err_px = 0.0;
    double std_err_x_px = 0.0;
    double std_err_y_px = 0.0;
    double mean_time_us = 0.0;
};

using Registrar = std::function<Displacement(const Grid&, const Grid&)>;

struct Algorithm {
    std::string name;
    Registrar run;
};

/// Population mean / std / extremes of a scalar sample.
struct ScalarStats {
    int n = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double max = 0.0;
};

ScalarStats scalar_stats(const std::vector<double>& values);

/// Runs every algorithm over every (PSNR level, dataset item) trial. Noise
/// is applied independently to reference and target with per-trial seeds
/// mix(seed, level << 33 | trial << 1 | role), so every algorithm sees the
/// same corrupted pair and reruns reproduce bit-identical statistics.
std::vector<SweepResult> accuracy_sweep(const Dataset& dataset,
                                        const std::vector<Algorithm>& algorithms,
                                        const std::vector<std::optional<double>>& psnr_levels,
                                        std::uint64_t seed);

/// Median wall-clock time of `reps` single-threaded runs in microseconds,
/// after `warmup` discarded runs.
double time_registration(const Registrar& algorithm, const Grid& reference, const Grid& target,
                         int warmup, int reps);

}  // namespace subpix
