#pragma once

#include <filesystem>
#include <stdexcept>

#include "subpix/grid.hpp"

namespace subpix {

/// File access or format problem (distinct from argument validation).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binary PGM (P5), 8-bit (maxval <= 255) or 16-bit big-endian
/// (maxval <= 65535). Sample values map to reals by direct cast, no
/// normalization.
Grid read_pgm(const std::filesystem::path& path);

/// Writes P5 with the given maxval; values are rounded and clamped to
/// [0, maxval].
void write_pgm(const std::filesystem::path& path, const Grid& grid, int maxval = 255);

/// Lossless raw grid format: magic "F64G", two 32-bit little-endian unsigned
/// dims (width, height), then width*height 64-bit little-endian IEEE
/// doubles, row-major.
Grid read_f64g(const std::filesystem::path& path);
void write_f64g(const std::filesystem::path& path, const Grid& grid);

/// Dispatches on extension: .pgm / .f64g.
Grid read_image(const std::filesystem::path& path);

}  // namespace subpix
