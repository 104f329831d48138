#pragma once

#include "subpix/grid.hpp"

namespace subpix {

/// Upsampled cross-correlation refinement: after the coarse peak, the
/// correlation is evaluated on a 1/kappa grid over a +-window_px window
/// around it, directly from the cross-power spectrum.
struct UpsampleConfig {
    int kappa = 100;
    double window_px = 1.5;
};

Displacement register_upsampled_dft(const Grid& reference, const Grid& target,
                                    const UpsampleConfig& cfg = {});

/// Phase-difference plane fit: the cross-power phase is unwrapped over the
/// low-frequency disc (normalized Nyquist radius <= keep_fraction) and a
/// plane is fitted by least squares, weighted by spectrum magnitude.
struct PhaseSlopeConfig {
    double keep_fraction = 0.6;
};

Displacement register_phase_slope(const Grid& reference, const Grid& target,
                                  const PhaseSlopeConfig& cfg = {});

}  // namespace subpix
