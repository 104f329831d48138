#pragma once

#include <complex>
#include <vector>

#include "subpix/grid.hpp"

namespace subpix {

/// Circular cross-correlation values indexed by WrapIndex lag. Same
/// dimensions as the correlated images; wrap-around semantics throughout.
struct CorrelationSurface {
    Grid grid;

    int width() const noexcept { return grid.width(); }
    int height() const noexcept { return grid.height(); }
    double at(const WrapIndex& idx) const noexcept { return grid(idx.ix, idx.iy); }
};

/// surface(l) = sum over (x, y) of a(x, y) * b((x+lx) mod w, (y+ly) mod h),
/// computed as IFT(conj(FT(a)) * FT(b)) and scaled so it matches the spatial
/// double sum exactly. Throws std::invalid_argument on dimension mismatch and
/// FlatSurfaceError on constant input.
CorrelationSurface cross_correlate(const Grid& a, const Grid& b);

/// Index of the global maximum; ties break toward the smallest iy, then ix.
WrapIndex locate_peak(const CorrelationSurface& s);

namespace detail {

// Internal plumbing shared with the comparison registrars: conj(FT(a))*FT(b)
// as a row-major spectrum, and the surface recovered from such a spectrum
// (inverse transform, imaginary-residue check, 1/(w*h) scale).
std::vector<std::complex<double>> cross_power_spectrum(const Grid& a, const Grid& b);
CorrelationSurface surface_from_cross_power(std::vector<std::complex<double>> spectrum,
                                            int width, int height);

}  // namespace detail

}  // namespace subpix
