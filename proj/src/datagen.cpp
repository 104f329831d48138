#include "subpix/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "subpix/rng.hpp"

namespace subpix {

Grid synth_gaussian(const GaussianMixtureSpec& spec) {
    if (spec.components.empty()) {
        throw std::invalid_argument("synth_gaussian: at least one component required");
    }
    for (const auto& c : spec.components) {
        if (!(c.sigma > 0.0)) {
            throw std::invalid_argument("synth_gaussian: sigma must be positive");
        }
    }

    struct Prepared {
        double amplitude, cx, cy, inv_two_sigma2;
    };
    std::vector<Prepared> prepared;
    prepared.reserve(spec.components.size());
    for (const auto& c : spec.components) {
        prepared.push_back({c.amplitude, c.x0 + spec.shift.dx, c.y0 + spec.shift.dy,
                            1.0 / (2.0 * c.sigma * c.sigma)});
    }

    std::vector<double> values(static_cast<std::size_t>(spec.width) * spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            double v = 0.0;
            for (const auto& p : prepared) {
                const double ddx = x - p.cx;
                const double ddy = y - p.cy;
                v += p.amplitude * std::exp(-(ddx * ddx + ddy * ddy) * p.inv_two_sigma2);
            }
            values[static_cast<std::size_t>(y) * spec.width + x] = v;
        }
    }
    return Grid(spec.width, spec.height, std::move(values));
}

// Draw order per seed: for each component in turn x0, y0, sigma, amplitude;
// then for each pair in turn dx, dy. Changing n_pairs only extends the
// sequence, it never reshuffles earlier draws.
Dataset sample_dataset1(std::uint64_t seed, int n_pairs, int size, int components) {
    if (n_pairs < 1) throw std::invalid_argument("sample_dataset1: n_pairs must be >= 1");
    if (size < 8) throw std::invalid_argument("sample_dataset1: size must be >= 8");
    if (components < 1) throw std::invalid_argument("sample_dataset1: components must be >= 1");

    rng::Stream stream(seed);
    GaussianMixtureSpec spec;
    spec.width = size;
    spec.height = size;
    spec.components.reserve(components);
    for (int i = 0; i < components; ++i) {
        GaussianComponent c;
        c.x0 = stream.uniform(0.0, size);
        c.y0 = stream.uniform(0.0, size);
        c.sigma = stream.uniform(1.0, 6.0);
        c.amplitude = stream.uniform_open_closed();
        spec.components.push_back(c);
    }

    Dataset dataset{synth_gaussian(spec), {}};
    dataset.items.reserve(n_pairs);
    for (int p = 0; p < n_pairs; ++p) {
        GaussianMixtureSpec shifted = spec;
        shifted.shift.dx = stream.uniform(-0.5, 0.5);
        shifted.shift.dy = stream.uniform(-0.5, 0.5);
        dataset.items.push_back(DatasetItem{synth_gaussian(shifted), shifted.shift});
    }
    return dataset;
}

Dataset make_dataset2(const Grid& source, int factor, int crop) {
    if (factor < 1) throw std::invalid_argument("make_dataset2: factor must be >= 1");
    if (crop < 1) throw std::invalid_argument("make_dataset2: crop must be >= 1");
    const int off = factor / 2;
    const long long span = static_cast<long long>(crop) * factor + 2LL * off;
    if (source.width() < span || source.height() < span) {
        throw std::invalid_argument("make_dataset2: source " + std::to_string(source.width()) +
                                    "x" + std::to_string(source.height()) + " too small; need >= " +
                                    std::to_string(span) + " per side");
    }

    // The tile for offset (u, v) starts at (off - u, off - v) in source
    // pixels, so sampling positions move by -u/D and the depicted content
    // moves by +u/D relative to the (0, 0) reference.
    const auto extract = [&](int u, int v) {
        std::vector<double> values(static_cast<std::size_t>(crop) * crop);
        const double norm = 1.0 / (static_cast<double>(factor) * factor);
        const int sx = off - u;
        const int sy = off - v;
        for (int yy = 0; yy < crop; ++yy) {
            for (int xx = 0; xx < crop; ++xx) {
                double sum = 0.0;
                for (int j = 0; j < factor; ++j) {
                    for (int i = 0; i < factor; ++i) {
                        sum += source(sx + xx * factor + i, sy + yy * factor + j);
                    }
                }
                values[static_cast<std::size_t>(yy) * crop + xx] = sum * norm;
            }
        }
        return Grid(crop, crop, std::move(values));
    };

    Dataset dataset{extract(0, 0), {}};
    for (int v = -off; v <= off; ++v) {
        for (int u = -off; u <= off; ++u) {
            if (u == 0 && v == 0) continue;
            dataset.items.push_back(DatasetItem{
                extract(u, v), Displacement{static_cast<double>(u) / factor,
                                            static_cast<double>(v) / factor}});
        }
    }
    return dataset;
}

Grid add_noise_psnr(const Grid& image, const NoiseSpec& spec) {
    if (!spec.psnr_db.has_value()) {
        return image;
    }
    if (!std::isfinite(*spec.psnr_db)) {
        throw std::invalid_argument("add_noise_psnr: psnr_db must be finite");
    }
    const auto [lo, hi] = std::minmax_element(image.data().begin(), image.data().end());
    if (*lo == *hi) {
        throw std::invalid_argument("add_noise_psnr: image is constant; peak-based PSNR undefined");
    }
    const double peak = *hi;
    const double sigma = peak / std::pow(10.0, *spec.psnr_db / 20.0);

    rng::Stream stream(spec.seed);
    std::vector<double> values(image.data());
    for (double& v : values) {
        v += sigma * stream.gaussian();
    }
    return Grid(image.width(), image.height(), std::move(values));
}

double measure_psnr_db(const Grid& clean, const Grid& noisy) {
    if (clean.width() != noisy.width() || clean.height() != noisy.height()) {
        throw std::invalid_argument("measure_psnr_db: dimension mismatch");
    }
    const double peak = *std::max_element(clean.data().begin(), clean.data().end());
    double mse = 0.0;
    for (std::size_t i = 0; i < clean.data().size(); ++i) {
        const double d = noisy.data()[i] - clean.data()[i];
        mse += d * d;
    }
    mse /= static_cast<double>(clean.data().size());
    return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace subpix
