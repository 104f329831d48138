#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace subpix {

/// Dense 2-D array of real-valued intensities with row-major layout
/// (y outer, x inner). Immutable after construction; constructors reject
/// size mismatches and non-finite values, so a Grid always holds
/// width*height finite doubles.
class Grid {
public:
    Grid(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    double operator()(int x, int y) const noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<double>& data() const noexcept { return data_; }

private:
    int width_;
    int height_;
    std::vector<double> data_;
};

/// Translation in pixels. Positive dx means the target content moved toward
/// increasing x relative to the reference; same convention for dy.
struct Displacement {
    double dx = 0.0;
    double dy = 0.0;
};

/// Unsigned lag index into a correlation surface: ix in [0, width),
/// iy in [0, height).
struct WrapIndex {
    int ix = 0;
    int iy = 0;
};

/// out(x, y) = g((x - sx) mod w, (y - sy) mod h): content moves by (+sx, +sy).
/// Shifting by a multiple of the grid size is the identity.
Grid circular_shift(const Grid& g, int sx, int sy);

/// Maps an unsigned lag to its signed lag in (-w/2, w/2] x (-h/2, h/2].
/// The exact half lag maps to the positive side.
std::pair<int, int> to_signed_lag(const WrapIndex& w, int width, int height);

}  // namespace subpix
