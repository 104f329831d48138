#pragma once

#include "subpix/grid.hpp"
#include "subpix/spectral.hpp"

namespace subpix {

/// Peak-centroid settings: radius of the circle (in lag pixels) around the
/// correlation maximum, and the minimum number of pixels that must exceed
/// the circle-minimum threshold before a centroid is accepted.
struct CentroidConfig {
    double radius = 3.0;
    int min_pixels_above_threshold = 3;
};

/// Threshold b: the minimum surface value over all cells whose Euclidean
/// lag distance from the peak is <= radius, distances taken on the torus.
double threshold_from_circle(const CorrelationSurface& s, const WrapIndex& peak,
                             const CentroidConfig& cfg = {});

/// Subpixel peak position: every cell of the surface is thresholded against
/// b (value - b above it, zero otherwise) and the first moment of the result
/// is taken in peak-centered wrapped coordinates, then added to the peak's
/// signed lag. The threshold keeps the contributing level set local to the
/// peak. Throws FlatSurfaceError when fewer than
/// cfg.min_pixels_above_threshold cells inside the circle exceed b.
Displacement modified_moment_centroid(const CorrelationSurface& s, const WrapIndex& peak,
                                      const CentroidConfig& cfg = {});

/// Coarse-to-fine registration: integer displacement from the correlation
/// peak, refined by the modified-moment centroid. Returns the displacement
/// that moves the reference content onto the target, each component wrapped
/// into (-w/2, w/2] resp. (-h/2, h/2].
Displacement register_translation(const Grid& reference, const Grid& target,
                                  const CentroidConfig& cfg = {});

/// Wraps one displacement component into (-extent/2, extent/2].
double wrap_displacement(double value, int extent);

}  // namespace subpix
