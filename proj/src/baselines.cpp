#include "subpix/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "subpix/errors.hpp"
#include "subpix/registration.hpp"
#include "subpix/spectral.hpp"

namespace subpix {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int signed_frequency(int k, int n) { return 2 * k <= n ? k : k - n; }

// exp(+2*pi*i * k~ * tau / n) for every bin of one axis.
std::vector<std::complex<double>> axis_kernel(int n, double tau) {
    std::vector<std::complex<double>> kernel(n);
    for (int k = 0; k < n; ++k) {
        kernel[k] = std::polar(1.0, two_pi * signed_frequency(k, n) * tau / n);
    }
    return kernel;
}

struct CoarsePeak {
    int sx = 0;
    int sy = 0;
};

CoarsePeak coarse_peak(const std::vector<std::complex<double>>& spectrum, int w, int h) {
    const CorrelationSurface surface = detail::surface_from_cross_power(spectrum, w, h);
    const auto [sx, sy] = to_signed_lag(locate_peak(surface), w, h);
    return CoarsePeak{sx, sy};
}

}  // namespace

Displacement register_upsampled_dft(const Grid& reference, const Grid& target,
                                    const UpsampleConfig& cfg) {
    if (cfg.kappa < 2) {
        throw std::invalid_argument("UpsampleConfig: kappa must be >= 2");
    }
    if (!(cfg.window_px > 0.0)) {
        throw std::invalid_argument("UpsampleConfig: window_px must be positive");
    }
    const int w = reference.width();
    const int h = reference.height();
    const auto spectrum = detail::cross_power_spectrum(reference, target);
    const CoarsePeak coarse = coarse_peak(spectrum, w, h);

    // Trigonometric interpolation of the correlation at lag (sx + jx/kappa,
    // sy + jy/kappa), evaluated as two separable matrix products over the
    // spectrum. Offsets j/kappa keep the on-grid node exact.
    const int jn = static_cast<int>(std::lround(cfg.window_px * cfg.kappa));
    const int nodes = 2 * jn + 1;

    std::vector<std::vector<std::complex<double>>> row_kernels(nodes);
    for (int j = 0; j < nodes; ++j) {
        row_kernels[j] = axis_kernel(h, coarse.sy + static_cast<double>(j - jn) / cfg.kappa);
    }

    // partial[j][kx] = sum over ky of kernel_y[j][ky] * spectrum[ky][kx]
    std::vector<std::vector<std::complex<double>>> partial(
        nodes, std::vector<std::complex<double>>(w, 0.0));
    for (int j = 0; j < nodes; ++j) {
        const auto& kernel = row_kernels[j];
        auto& out = partial[j];
        for (int ky = 0; ky < h; ++ky) {
            const std::complex<double> ke = kernel[ky];
            const auto* row = spectrum.data() + static_cast<std::size_t>(ky) * w;
            for (int kx = 0; kx < w; ++kx) {
                out[kx] += ke * row[kx];
            }
        }
    }

    std::vector<std::vector<std::complex<double>>> col_kernels(nodes);
    for (int j = 0; j < nodes; ++j) {
        col_kernels[j] = axis_kernel(w, coarse.sx + static_cast<double>(j - jn) / cfg.kappa);
    }

    int best_jx = 0;
    int best_jy = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int jy = 0; jy < nodes; ++jy) {
        const auto& row = partial[jy];
        for (int jx = 0; jx < nodes; ++jx) {
            const auto& kernel = col_kernels[jx];
            double value = 0.0;
            for (int kx = 0; kx < w; ++kx) {
                const auto& a = row[kx];
                const auto& b = kernel[kx];
                value += a.real() * b.real() - a.imag() * b.imag();
            }
            if (value > best_value) {
                best_value = value;
                best_jx = jx;
                best_jy = jy;
            }
        }
    }

    const double dx = coarse.sx + static_cast<double>(best_jx - jn) / cfg.kappa;
    const double dy = coarse.sy + static_cast<double>(best_jy - jn) / cfg.kappa;
    return Displacement{wrap_displacement(dx, w), wrap_displacement(dy, h)};
}

namespace {

struct PhasePoint {
    double kx = 0.0;
    double ky = 0.0;
    double rho = 0.0;
    double phase = 0.0;
    double weight = 0.0;
};

double wrap_to_pi(double a) { return a - two_pi * std::round(a / two_pi); }

// Solves the symmetric 3x3 normal system via Gaussian elimination with
// partial pivoting; returns false when rank-deficient.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
            std::array<double, 3>& out) {
    double max_entry = 0.0;
    for (const auto& row : m) {
        for (double v : row) max_entry = std::max(max_entry, std::abs(v));
    }
    if (max_entry == 0.0) return false;
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-12 * max_entry) return false;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double v = rhs[r];
        for (int c = r + 1; c < 3; ++c) v -= m[r][c] * out[c];
        out[r] = v / m[r][r];
    }
    return true;
}

}  // namespace

Displacement register_phase_slope(const Grid& reference, const Grid& target,
                                  const PhaseSlopeConfig& cfg) {
    if (!(cfg.keep_fraction > 0.0) || cfg.keep_fraction > 1.0) {
        throw std::invalid_argument("PhaseSlopeConfig: keep_fraction must be in (0, 1]");
    }
    const int w = reference.width();
    const int h = reference.height();
    auto spectrum = detail::cross_power_spectrum(reference, target);
    const CoarsePeak coarse = coarse_peak(spectrum, w, h);

    // Compensate the integer part so the residual phase plane stays shallow
    // enough that unwrapping from the lowest frequencies out is reliable.
    for (int ky = 0; ky < h; ++ky) {
        for (int kx = 0; kx < w; ++kx) {
            const double angle = two_pi * (signed_frequency(kx, w) * static_cast<double>(coarse.sx) / w +
                                           signed_frequency(ky, h) * static_cast<double>(coarse.sy) / h);
            spectrum[static_cast<std::size_t>(ky) * w + kx] *= std::polar(1.0, angle);
        }
    }

    std::vector<PhasePoint> points;
    points.reserve(static_cast<std::size_t>(w) * h / 2);
    double max_weight = 0.0;
    for (int ky = 0; ky < h; ++ky) {
        const int sy = signed_frequency(ky, h);
        for (int kx = 0; kx < w; ++kx) {
            const int sx = signed_frequency(kx, w);
            if (sx == 0 && sy == 0) continue;
            const double rho = std::hypot(sx / (w / 2.0), sy / (h / 2.0));
            if (rho > cfg.keep_fraction) continue;
            const auto& q = spectrum[static_cast<std::size_t>(ky) * w + kx];
            const double weight = std::abs(q);
            max_weight = std::max(max_weight, weight);
            points.push_back(PhasePoint{static_cast<double>(sx), static_cast<double>(sy), rho,
                                        std::arg(q), weight});
        }
    }
    // Bins whose magnitude is transform round-off relative to the strongest
    // bin carry no phase; feeding them to the running fit before the real
    // content arrives would seed the unwrapping with garbage.
    std::erase_if(points, [&](const PhasePoint& p) { return p.weight <= 1e-9 * max_weight; });

    std::sort(points.begin(), points.end(), [](const PhasePoint& a, const PhasePoint& b) {
        if (a.rho != b.rho) return a.rho < b.rho;
        if (a.ky != b.ky) return a.ky < b.ky;
        return a.kx < b.kx;
    });

    // Weighted LS plane phi = ax*kx + ay*ky + c, built outward from DC; each
    // point is unwrapped against the current fit before it is accumulated.
    std::array<std::array<double, 3>, 3> normal{};
    std::array<double, 3> rhs{};
    std::array<double, 3> coeff{0.0, 0.0, 0.0};
    bool solved = false;
    for (const auto& p : points) {
        const double predicted = coeff[0] * p.kx + coeff[1] * p.ky + coeff[2];
        const double phase = predicted + wrap_to_pi(p.phase - predicted);
        const std::array<double, 3> u{p.kx, p.ky, 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) normal[r][c] += p.weight * u[r] * u[c];
            rhs[r] += p.weight * u[r] * phase;
        }
        std::array<double, 3> next{};
        if (solve3(normal, rhs, next)) {
            coeff = next;
            solved = true;
        }
    }
    if (!solved) {
        throw RegistrationError("phase_slope: plane fit is rank-deficient (too few "
                                "usable frequencies inside the disc)");
    }

    // target = reference shifted by d gives phase -2*pi*(kx*dx/w + ky*dy/h).
    const double dx = coarse.sx - coeff[0] * w / two_pi;
    const double dy = coarse.sy - coeff[1] * h / two_pi;
    return Displacement{wrap_displacement(dx, w), wrap_displacement(dy, h)};
}

}  // namespace subpix
