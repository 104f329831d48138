#pragma once

#include <stdexcept>

namespace subpix {

/// Base class for registration failures the caller is expected to handle
/// (as opposed to contract violations, which throw std::invalid_argument).
struct RegistrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The correlation surface is too flat to centroid: constant input images,
/// or fewer than the configured number of pixels above the circle-minimum
/// threshold.
struct FlatSurfaceError : RegistrationError {
    using RegistrationError::RegistrationError;
};

}  // namespace subpix
