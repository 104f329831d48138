#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace subpix::rng {

/// Derives an independent stream seed from a base seed and a stream id
/// (splitmix64 finalizer over seed + golden-ratio increments). Used so that
/// per-pair and per-trial noise streams reproduce regardless of evaluation
/// order.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministic, platform-portable random stream. The engine is
/// std::mt19937_64, whose output is pinned by the C++ standard; the
/// mappings below are explicit because the standard <random> distributions
/// are not. Conventions:
///   uniform01:            (x >> 11) * 2^-53, in [0, 1)
///   uniform(lo, hi):      lo + uniform01() * (hi - lo)
///   uniform_open_closed:  1 - uniform01(), in (0, 1]
///   gaussian:             Box-Muller on (u1, u2); the sine mate is cached
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    double uniform_open_closed() { return 1.0 - uniform01(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open_closed();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace subpix::rng
