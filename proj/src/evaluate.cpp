#include "subpix/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "subpix/errors.hpp"
#include "subpix/rng.hpp"

namespace subpix {

ScalarStats scalar_stats(const std::vector<double>& values) {
    ScalarStats s;
    s.n = static_cast<int>(values.size());
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / s.n;
    double ss = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        ss += d * d;
    }
    s.stddev = std::sqrt(ss / s.n);  // population convention
    s.max = *std::max_element(values.begin(), values.end());
    return s;
}

namespace {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t level, std::size_t trial, int role) {
    return rng::mix(seed, (static_cast<std::uint64_t>(level) << 33) |
                              (static_cast<std::uint64_t>(trial) << 1) |
                              static_cast<std::uint64_t>(role));
}

}  // namespace

std::vector<SweepResult> accuracy_sweep(const Dataset& dataset,
                                        const std::vector<Algorithm>& algorithms,
                                        const std::vector<std::optional<double>>& psnr_levels,
                                        std::uint64_t seed) {
    if (dataset.items.empty()) {
        throw std::invalid_argument("accuracy_sweep: empty dataset");
    }
    if (algorithms.empty()) {
        throw std::invalid_argument("accuracy_sweep: no algorithms");
    }

    using clock = std::chrono::steady_clock;
    std::vector<SweepResult> results;
    results.reserve(algorithms.size() * psnr_levels.size());

    for (std::size_t li = 0; li < psnr_levels.size(); ++li) {
        const auto& level = psnr_levels[li];

        struct Accum {
            std::vector<double> magnitude, err_x, err_y;
            double time_us_total = 0.0;
            int failures = 0;
        };
        std::vector<Accum> accum(algorithms.size());

        for (std::size_t ti = 0; ti < dataset.items.size(); ++ti) {
            const auto& item = dataset.items[ti];
            const Grid ref = add_noise_psnr(dataset.reference,
                                            NoiseSpec{level, trial_seed(seed, li, ti, 0)});
            const Grid tgt = add_noise_psnr(item.image,
                                            NoiseSpec{level, trial_seed(seed, li, ti, 1)});

            for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
                auto& acc = accum[ai];
                const auto start = clock::now();
                try {
                    const Displacement est = algorithms[ai].run(ref, tgt);
                    acc.time_us_total +=
                        std::chrono::duration<double, std::micro>(clock::now() - start).count();
                    const double ex = est.dx - item.truth.dx;
                    const double ey = est.dy - item.truth.dy;
                    acc.magnitude.push_back(std::hypot(ex, ey));
                    acc.err_x.push_back(ex);
                    acc.err_y.push_back(ey);
                } catch (const RegistrationError&) {
                    ++acc.failures;  // failures are data, not exceptions
                }
            }
        }

        for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
            const auto& acc = accum[ai];
            SweepResult r;
            r.algorithm = algorithms[ai].name;
            r.psnr_db = level;
            r.n = static_cast<int>(acc.magnitude.size());
            r.failures = acc.failures;
            const ScalarStats mag = scalar_stats(acc.magnitude);
            r.std_err_px = mag.stddev;
            r.mean_abs_err_px = mag.mean;
            r.max_err_px = mag.max;
            r.std_err_x_px = scalar_stats(acc.err_x).stddev;
            r.std_err_y_px = scalar_stats(acc.err_y).stddev;
            r.mean_time_us = r.n > 0 ? acc.time_us_total / r.n : 0.0;
            results.push_back(std::move(r));
        }
    }
    return results;
}

double time_registration(const Registrar& algorithm, const Grid& reference, const Grid& target,
                         int warmup, int reps) {
    if (reps < 1) throw std::invalid_argument("time_registration: reps must be >= 1");
    if (warmup < 0) throw std::invalid_argument("time_registration: warmup must be >= 0");

    using clock = std::chrono::steady_clock;
    for (int i = 0; i < warmup; ++i) {
        (void)algorithm(reference, target);
    }
    std::vector<double> times_us;
    times_us.reserve(reps);
    for (int i = 0; i < reps; ++i) {
        const auto start = clock::now();
        (void)algorithm(reference, target);
        times_us.push_back(
            std::chrono::duration<double, std::micro>(clock::now() - start).count());
    }
    std::sort(times_us.begin(), times_us.end());
    const std::size_t mid = times_us.size() / 2;
    return times_us.size() % 2 == 1 ? times_us[mid]
                                    : 0.5 * (times_us[mid - 1] + times_us[mid]);
}

}  // namespace subpix
