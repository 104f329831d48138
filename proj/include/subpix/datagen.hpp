#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subpix/grid.hpp"

namespace subpix {

struct GaussianComponent {
    double amplitude = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;
    double sigma = 1.0;
};

/// Parameters of a synthetic Gaussian-mixture image plus the translation
/// applied to it. The reference image is the shift = (0, 0) case.
struct GaussianMixtureSpec {
    std::vector<GaussianComponent> components;
    int width = 128;
    int height = 128;
    Displacement shift{};
};

/// I(x, y) = sum_i A_i * exp(-((x - x0_i - dx)^2 + (y - y0_i - dy)^2) / (2 sigma_i^2)),
/// evaluated at integer pixels. The analytic field is re-sampled for every
/// shift; no interpolation anywhere.
Grid synth_gaussian(const GaussianMixtureSpec& spec);

struct DatasetItem {
    Grid image;
    Displacement truth;
};

/// A reference image plus translated variants with exact recorded truths.
struct Dataset {
    Grid reference;
    std::vector<DatasetItem> items;
};

/// Synthetic mixture dataset: one mixture drawn per seed (centers uniform on
/// [0, size)^2, sigma uniform on [1, 6), amplitudes uniform on (0, 1]),
/// n_pairs shifted variants with per-pair (dx, dy) uniform on [-0.5, 0.5)^2.
/// Deterministic per seed; draw order is documented in datagen.cpp.
Dataset sample_dataset1(std::uint64_t seed, int n_pairs, int size = 128, int components = 200);

/// Fractional-shift dataset built by box-filtering and decimating a single
/// high-resolution image at offset grids. Offsets u, v run over
/// {-floor(D/2), ..., +floor(D/2)}; the (0, 0) tile is the reference and the
/// item built at offset (u, v) carries the exact truth (u/D, v/D). Total
/// image count is (#offsets)^2, e.g. 289 at D = 16.
Dataset make_dataset2(const Grid& source, int factor, int crop);

/// White-Gaussian-noise injection calibrated to a target PSNR, or "clean"
/// (nullopt) for a pass-through. Deterministic per seed.
struct NoiseSpec {
    std::optional<double> psnr_db;
    std::uint64_t seed = 0;
};

/// sigma_noise = peak / 10^(psnr_db / 20), peak = max of the clean image.
Grid add_noise_psnr(const Grid& image, const NoiseSpec& spec);

/// 10*log10(peak^2 / MSE) with peak = max of the clean image.
double measure_psnr_db(const Grid& clean, const Grid& noisy);

}  // namespace subpix
