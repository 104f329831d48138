#include "subpix/registration.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "subpix/errors.hpp"

namespace subpix {

namespace {

void validate(const CorrelationSurface& s, const WrapIndex& peak, const CentroidConfig& cfg) {
    if (cfg.radius < 1.0) {
        throw std::invalid_argument("CentroidConfig: radius must be >= 1");
    }
    if (cfg.min_pixels_above_threshold < 1) {
        throw std::invalid_argument("CentroidConfig: min_pixels_above_threshold must be >= 1");
    }
    const int w = s.width();
    const int h = s.height();
    if (2.0 * cfg.radius >= std::min(w, h)) {
        throw std::invalid_argument("CentroidConfig: radius " + std::to_string(cfg.radius) +
                                    " too large for " + std::to_string(w) + "x" +
                                    std::to_string(h) + " surface");
    }
    if (peak.ix < 0 || peak.ix >= w || peak.iy < 0 || peak.iy >= h) {
        throw std::out_of_range("centroid: peak index outside surface");
    }
}

// Visits every cell whose torus lag distance from the peak is <= radius.
// The radius < min(w,h)/2 precondition guarantees each cell is visited once.
template <typename Fn>
void for_each_circle_cell(const CorrelationSurface& s, const WrapIndex& peak, double radius,
                          Fn&& fn) {
    const int w = s.width();
    const int h = s.height();
    const int r = static_cast<int>(radius);
    const double r2 = radius * radius;
    for (int dv = -r; dv <= r; ++dv) {
        const int y = ((peak.iy + dv) % h + h) % h;
        for (int du = -r; du <= r; ++du) {
            if (du * du + dv * dv > r2) continue;
            const int x = ((peak.ix + du) % w + w) % w;
            fn(du, dv, s.grid(x, y));
        }
    }
}

}  // namespace

double threshold_from_circle(const CorrelationSurface& s, const WrapIndex& peak,
                             const CentroidConfig& cfg) {
    validate(s, peak, cfg);
    double b = s.at(peak);
    for_each_circle_cell(s, peak, cfg.radius,
                         [&](int, int, double v) { b = std::min(b, v); });
    return b;
}

Displacement modified_moment_centroid(const CorrelationSurface& s, const WrapIndex& peak,
                                      const CentroidConfig& cfg) {
    const double b = threshold_from_circle(s, peak, cfg);

    // The circle's job ends with b; a peak whose own neighborhood cannot
    // clear the threshold is the flat-surface failure mode.
    int above_in_circle = 0;
    for_each_circle_cell(s, peak, cfg.radius, [&](int, int, double v) {
        if (v > b) ++above_in_circle;
    });
    if (above_in_circle < cfg.min_pixels_above_threshold) {
        throw FlatSurfaceError("centroid: only " + std::to_string(above_in_circle) +
                               " pixel(s) above the circle-minimum threshold (need " +
                               std::to_string(cfg.min_pixels_above_threshold) +
                               "); correlation surface too flat");
    }

    // First moment of the thresholded surface in peak-centered coordinates.
    // b is the minimum near the peak, so the level set above it hugs the
    // peak; centering the frame on the peak cell keeps wrapped offsets
    // unambiguous.
    const int w = s.width();
    const int h = s.height();
    double mass = 0.0;
    double moment_x = 0.0;
    double moment_y = 0.0;
    for (int y = 0; y < h; ++y) {
        int dv = (y - peak.iy) % h;
        if (dv < 0) dv += h;
        if (2 * dv > h) dv -= h;
        for (int x = 0; x < w; ++x) {
            const double v = s.grid(x, y);
            if (v > b) {
                int du = (x - peak.ix) % w;
                if (du < 0) du += w;
                if (2 * du > w) du -= w;
                const double weight = v - b;
                mass += weight;
                moment_x += du * weight;
                moment_y += dv * weight;
            }
        }
    }

    const auto [lag_x, lag_y] = to_signed_lag(peak, w, h);
    return Displacement{lag_x + moment_x / mass, lag_y + moment_y / mass};
}

Displacement register_translation(const Grid& reference, const Grid& target,
                                  const CentroidConfig& cfg) {
    const CorrelationSurface surface = cross_correlate(reference, target);
    const WrapIndex peak = locate_peak(surface);
    const Displacement d = modified_moment_centroid(surface, peak, cfg);
    return Displacement{wrap_displacement(d.dx, reference.width()),
                        wrap_displacement(d.dy, reference.height())};
}

double wrap_displacement(double value, int extent) {
    const double half = extent / 2.0;
    while (value > half) value -= extent;
    while (value <= -half) value += extent;
    return value;
}

}  // namespace subpix
