#include "subpix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subpix/errors.hpp"
#include "subpix/fft.hpp"

namespace subpix {

namespace {

void require_non_constant(const Grid& g, const char* which) {
    const auto [lo, hi] = std::minmax_element(g.data().begin(), g.data().end());
    if (*lo == *hi) {
        throw FlatSurfaceError(std::string("cross_correlate: ") + which +
                               " image is constant; correlation surface would be flat");
    }
}

}  // namespace

namespace detail {

std::vector<std::complex<double>> cross_power_spectrum(const Grid& a, const Grid& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("cross_correlate: dimension mismatch");
    }
    require_non_constant(a, "first");
    require_non_constant(b, "second");

    const int w = a.width();
    const int h = a.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<std::complex<double>> fa(n), fb(n);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = a.data()[i];
        fb[i] = b.data()[i];
    }
    fft::forward(w, h, fa.data());
    fft::forward(w, h, fb.data());
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = std::conj(fa[i]) * fb[i];
    }
    return fa;
}

CorrelationSurface surface_from_cross_power(std::vector<std::complex<double>> spectrum,
                                            int width, int height) {
    fft::inverse(width, height, spectrum.data());

    // The inputs are real, so the inverse must come back real up to rounding;
    // anything larger indicates a transform bug, not a data problem.
    double max_imag = 0.0;
    double max_real = 0.0;
    for (const auto& z : spectrum) {
        max_imag = std::max(max_imag, std::abs(z.imag()));
        max_real = std::max(max_real, std::abs(z.real()));
    }
    if (max_imag > 1e-6 * max_real) {
        throw std::logic_error("cross_correlate: inverse transform has non-real residue");
    }

    // Unnormalized inverse carries a w*h factor; dividing it out makes the
    // surface equal the plain spatial double sum (the centroid is invariant
    // to any uniform positive scale, but the direct definition is the
    // friendliest convention to document).
    const double scale = 1.0 / (static_cast<double>(width) * height);
    std::vector<double> values(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        values[i] = spectrum[i].real() * scale;
    }
    return CorrelationSurface{Grid(width, height, std::move(values))};
}

}  // namespace detail

CorrelationSurface cross_correlate(const Grid& a, const Grid& b) {
    return detail::surface_from_cross_power(detail::cross_power_spectrum(a, b),
                                            a.width(), a.height());
}

WrapIndex locate_peak(const CorrelationSurface& s) {
    const int w = s.width();
    const int h = s.height();
    WrapIndex best{0, 0};
    double best_value = s.grid(0, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = s.grid(x, y);
            if (v > best_value) {
                best_value = v;
                best = WrapIndex{x, y};
            }
        }
    }
    return best;
}

}  // namespace subpix
