#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subpix {

/// One dataset image record: file name (relative to the manifest), exact
/// ground-truth shift, the PSNR it was corrupted to (absent = clean) and the
/// noise seed used (0 when clean).
struct ManifestImage {
    std::string file;
    double dx = 0.0;
    double dy = 0.0;
    std::optional<double> psnr_db;
    std::uint64_t seed = 0;
};

/// Enough metadata to regenerate a dataset byte-for-byte: tool version,
/// command line, seed and generation parameters, plus the per-image records.
struct Manifest {
    std::string tool;
    std::string version;
    std::string kind;  // "synthetic" | "downsample"
    std::string command;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
    std::string reference;
    std::vector<ManifestImage> images;
};

void save_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace subpix
