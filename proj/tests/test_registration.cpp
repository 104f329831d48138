#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "subpix/datagen.hpp"
#include "subpix/errors.hpp"
#include "subpix/registration.hpp"
#include "subpix/rng.hpp"
#include "subpix/spectral.hpp"

using namespace subpix;

namespace {

Grid random_grid(int w, int h, std::uint64_t seed) {
    rng::Stream stream(seed);
    std::vector<double> values(static_cast<std::size_t>(w) * h);
    for (double& v : values) v = stream.uniform(0.0, 1.0);
    return Grid(w, h, std::move(values));
}

// Gaussian bump sampled with wrap-around distances, usable directly as a
// correlation surface.
CorrelationSurface torus_bump(int w, int h, double cx, double cy, double sigma) {
    std::vector<double> values(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double ddx = std::abs(x - cx);
            ddx = std::min(ddx, w - ddx);
            double ddy = std::abs(y - cy);
            ddy = std::min(ddy, h - ddy);
            values[static_cast<std::size_t>(y) * w + x] =
                std::exp(-(ddx * ddx + ddy * ddy) / (2.0 * sigma * sigma));
        }
    }
    return CorrelationSurface{Grid(w, h, std::move(values))};
}

GaussianMixtureSpec seeded_mixture(std::uint64_t seed, int size = 128, int components = 200) {
    rng::Stream stream(seed);
    GaussianMixtureSpec spec;
    spec.width = size;
    spec.height = size;
    for (int i = 0; i < components; ++i) {
        GaussianComponent c;
        c.x0 = stream.uniform(0.0, size);
        c.y0 = stream.uniform(0.0, size);
        c.sigma = stream.uniform(1.0, 6.0);
        c.amplitude = stream.uniform_open_closed();
        spec.components.push_back(c);
    }
    return spec;
}

}  // namespace

TEST_CASE("threshold is the minimum inside the circle") {
    SUBCASE("constant circle") {
        const CorrelationSurface s{Grid(9, 9, std::vector<double>(81, 4.0))};
        CHECK(threshold_from_circle(s, {4, 4}, {}) == 4.0);
    }

    SUBCASE("minimum on the rim") {
        std::vector<double> values(9 * 9, 1.0);
        values[static_cast<std::size_t>(4) * 9 + 4] = 9.0;
        values[static_cast<std::size_t>(4) * 9 + 7] = 0.2;   // distance 3, on the rim
        values[static_cast<std::size_t>(0) * 9 + 0] = -5.0;  // outside the circle
        const CorrelationSurface s{Grid(9, 9, values)};
        CHECK(threshold_from_circle(s, {4, 4}, {}) == 0.2);
    }

    SUBCASE("matches the exhaustive torus-distance scan") {
        for (int trial = 0; trial < 10; ++trial) {
            const CorrelationSurface s{random_grid(128, 128, 3000 + trial)};
            const WrapIndex peak = locate_peak(s);
            CHECK(threshold_from_circle(s, peak, {}) ==
                  oracles::oracle_threshold(s, peak, 3.0));
        }
    }
}

TEST_CASE("centroid of a symmetric bump is the peak lag") {
    const auto s = torus_bump(32, 32, 10.0, 21.0, 1.4);
    const WrapIndex peak = locate_peak(s);
    const auto [lag_x, lag_y] = to_signed_lag(peak, 32, 32);
    CHECK(lag_x == 10);
    CHECK(lag_y == -11);  // 21 wraps past the half extent
    const auto d = modified_moment_centroid(s, peak, {});
    CHECK(std::abs(d.dx - lag_x) <= 1e-9);
    CHECK(std::abs(d.dy - lag_y) <= 1e-9);
}

TEST_CASE("single contributing cell pins the centroid to the peak") {
    std::vector<double> values(11 * 11, 0.5);
    values[static_cast<std::size_t>(5) * 11 + 6] = 1.0;
    const CorrelationSurface s{Grid(11, 11, values)};
    const CentroidConfig cfg{3.0, 1};
    const auto d = modified_moment_centroid(s, {6, 5}, cfg);
    CHECK(d.dx == doctest::Approx(-5.0).epsilon(1e-12));  // 6 wraps to -5 on width 11
    CHECK(d.dy == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("off-center analytic bump: library matches truth and the loop oracle") {
    const auto s = torus_bump(64, 64, 10.3, 20.7, 1.5);
    const WrapIndex peak = locate_peak(s);
    const auto d = modified_moment_centroid(s, peak, {});
    CHECK(std::abs(d.dx - 10.3) <= 0.05);
    CHECK(std::abs(d.dy - 20.7) <= 0.05);

    const auto o = oracles::oracle_centroid(s, peak, {});
    CHECK(std::abs(d.dx - o.dx) <= 1e-12);
    CHECK(std::abs(d.dy - o.dy) <= 1e-12);
}

TEST_CASE("centroid agrees with the oracle on random surfaces") {
    for (int trial = 0; trial < 50; ++trial) {
        const CorrelationSurface s{random_grid(32, 32, 4000 + trial)};
        const WrapIndex peak = locate_peak(s);
        const auto lib = modified_moment_centroid(s, peak, {});
        const auto ora = oracles::oracle_centroid(s, peak, {});
        CHECK(std::abs(lib.dx - ora.dx) <= 1e-12);
        CHECK(std::abs(lib.dy - ora.dy) <= 1e-12);
    }
}

TEST_CASE("degenerate peak raises FlatSurfaceError") {
    std::vector<double> values(11 * 11, 0.5);
    values[static_cast<std::size_t>(5) * 11 + 5] = 1.0;
    const CorrelationSurface s{Grid(11, 11, values)};
    CHECK_THROWS_AS(modified_moment_centroid(s, {5, 5}, {}), FlatSurfaceError);
}

TEST_CASE("radius must leave room on the torus") {
    const CorrelationSurface s{random_grid(6, 6, 77)};
    CHECK_THROWS_AS(modified_moment_centroid(s, {0, 0}, CentroidConfig{3.0, 3}),
                    std::invalid_argument);
}

TEST_CASE("register_translation of an image with itself is zero") {
    GaussianMixtureSpec spec = seeded_mixture(12345, 64, 50);
    const Grid g = synth_gaussian(spec);
    const auto d = register_translation(g, g);
    CHECK(std::abs(d.dx) <= 1e-12);
    CHECK(std::abs(d.dy) <= 1e-12);
}

TEST_CASE("integer circular shifts are recovered with near-zero fraction") {
    const Grid g = synth_gaussian(seeded_mixture(777, 64, 50));
    const auto d = register_translation(g, circular_shift(g, 4, -7));
    CHECK(std::abs(d.dx - 4.0) <= 1e-6);
    CHECK(std::abs(d.dy + 7.0) <= 1e-6);
}

TEST_CASE("noise-free subpixel shift on a synthetic pair") {
    GaussianMixtureSpec spec = seeded_mixture(31415);
    const Grid reference = synth_gaussian(spec);
    spec.shift = {0.25, -0.375};
    const Grid target = synth_gaussian(spec);
    const auto d = register_translation(reference, target);
    CHECK(std::abs(d.dx - 0.25) <= 0.05);
    CHECK(std::abs(d.dy + 0.375) <= 0.05);
}

TEST_CASE("gain invariance") {
    GaussianMixtureSpec spec = seeded_mixture(999, 64, 50);
    const Grid a = synth_gaussian(spec);
    spec.shift = {0.31, -0.12};
    const Grid b = synth_gaussian(spec);
    const auto base = register_translation(a, b);
    for (double k : {1e-3, 1e3}) {
        std::vector<double> sa(a.data()), sb(b.data());
        for (double& v : sa) v *= k;
        for (double& v : sb) v *= k;
        const auto scaled = register_translation(Grid(64, 64, sa), Grid(64, 64, sb));
        CHECK(std::abs(scaled.dx - base.dx) <= 1e-12);
        CHECK(std::abs(scaled.dy - base.dy) <= 1e-12);
    }
}

TEST_CASE("joint-shift equivariance") {
    GaussianMixtureSpec spec = seeded_mixture(1717, 64, 50);
    const Grid a = synth_gaussian(spec);
    spec.shift = {-0.21, 0.44};
    const Grid b = synth_gaussian(spec);
    const auto base = register_translation(a, b);
    const auto moved = register_translation(circular_shift(a, 9, -5), circular_shift(b, 9, -5));
    CHECK(std::abs(moved.dx - base.dx) <= 1e-12);
    CHECK(std::abs(moved.dy - base.dy) <= 1e-12);
}

TEST_CASE("approximate antisymmetry on synthetic pairs") {
    GaussianMixtureSpec spec = seeded_mixture(2024);
    const Grid a = synth_gaussian(spec);
    spec.shift = {0.4, 0.15};
    const Grid b = synth_gaussian(spec);
    const auto fwd = register_translation(a, b);
    const auto rev = register_translation(b, a);
    CHECK(std::abs(fwd.dx + rev.dx) <= 0.02);
    CHECK(std::abs(fwd.dy + rev.dy) <= 0.02);
}

TEST_CASE("non-square and odd-sized grids register fine") {
    rng::Stream stream(64128);
    GaussianMixtureSpec spec;
    spec.width = 48;
    spec.height = 33;
    for (int i = 0; i < 60; ++i) {
        spec.components.push_back({stream.uniform_open_closed(), stream.uniform(0.0, 48.0),
                                   stream.uniform(0.0, 33.0), stream.uniform(1.0, 4.0)});
    }
    const Grid reference = synth_gaussian(spec);

    const auto d = register_translation(reference, circular_shift(reference, 5, -4));
    CHECK(std::abs(d.dx - 5.0) <= 1e-6);
    CHECK(std::abs(d.dy + 4.0) <= 1e-6);

    spec.shift = {0.25, -0.25};
    const auto f = register_translation(reference, synth_gaussian(spec));
    CHECK(std::abs(f.dx - 0.25) <= 0.1);
    CHECK(std::abs(f.dy + 0.25) <= 0.1);
}

TEST_CASE("constant images cannot be registered") {
    const Grid flat(16, 16, std::vector<double>(256, 1.0));
    const Grid ok = random_grid(16, 16, 55);
    CHECK_THROWS_AS(register_translation(flat, flat), FlatSurfaceError);
    CHECK_THROWS_AS(register_translation(ok, flat), FlatSurfaceError);
}

TEST_CASE("wrap_displacement maps into the half-open interval") {
    CHECK(wrap_displacement(64.3, 128) == doctest::Approx(-63.7));
    CHECK(wrap_displacement(64.0, 128) == 64.0);
    CHECK(wrap_displacement(-64.0, 128) == 64.0);
    CHECK(wrap_displacement(-63.9, 128) == doctest::Approx(-63.9));
    CHECK(wrap_displacement(0.0, 128) == 0.0);
}
