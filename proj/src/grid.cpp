#include "subpix/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subpix {

Grid::Grid(int width, int height, std::vector<double> values)
    : width_(width), height_(height), data_(std::move(values)) {
    if (width_ <= 0 || height_ <= 0) {
        throw std::invalid_argument("Grid: dimensions must be positive, got " +
                                    std::to_string(width_) + "x" + std::to_string(height_));
    }
    const auto expected = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    if (data_.size() != expected) {
        throw std::invalid_argument("Grid: value count " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width_) + "x" +
                                    std::to_string(height_));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("Grid: non-finite value");
        }
    }
}

namespace {

int wrap(int value, int n) {
    int m = value % n;
    return m < 0 ? m + n : m;
}

}  // namespace

Grid circular_shift(const Grid& g, int sx, int sy) {
    const int w = g.width();
    const int h = g.height();
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const int src_y = wrap(y - sy, h);
        for (int x = 0; x < w; ++x) {
            out[static_cast<std::size_t>(y) * w + x] = g(wrap(x - sx, w), src_y);
        }
    }
    return Grid(w, h, std::move(out));
}

std::pair<int, int> to_signed_lag(const WrapIndex& idx, int width, int height) {
    if (idx.ix < 0 || idx.ix >= width || idx.iy < 0 || idx.iy >= height) {
        throw std::out_of_range("to_signed_lag: index (" + std::to_string(idx.ix) + ", " +
                                std::to_string(idx.iy) + ") outside " + std::to_string(width) +
                                "x" + std::to_string(height));
    }
    // 2*ix <= w keeps the exact half lag on the positive side without
    // touching floating point.
    const int sx = 2 * idx.ix <= width ? idx.ix : idx.ix - width;
    const int sy = 2 * idx.iy <= height ? idx.iy : idx.iy - height;
    return {sx, sy};
}

}  // namespace subpix
