#include "subpix/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "subpix/image_io.hpp"

namespace subpix {

using nlohmann::json;

void save_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    json images = json::array();
    for (const auto& img : manifest.images) {
        json rec{{"file", img.file}, {"dx", img.dx}, {"dy", img.dy}, {"seed", img.seed}};
        rec["psnr_db"] = img.psnr_db.has_value() ? json(*img.psnr_db) : json(nullptr);
        images.push_back(std::move(rec));
    }
    const json doc{{"tool", manifest.tool},
                   {"version", manifest.version},
                   {"kind", manifest.kind},
                   {"command", manifest.command},
                   {"seed", manifest.seed},
                   {"params", manifest.params},
                   {"reference", manifest.reference},
                   {"images", images}};
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw IoError(path.string() + ": write failed");
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    try {
        Manifest m;
        m.tool = doc.at("tool").get<std::string>();
        m.version = doc.at("version").get<std::string>();
        m.kind = doc.at("kind").get<std::string>();
        m.command = doc.at("command").get<std::string>();
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.params = doc.at("params").get<std::map<std::string, double>>();
        m.reference = doc.at("reference").get<std::string>();
        for (const auto& rec : doc.at("images")) {
            ManifestImage img;
            img.file = rec.at("file").get<std::string>();
            img.dx = rec.at("dx").get<double>();
            img.dy = rec.at("dy").get<double>();
            img.seed = rec.at("seed").get<std::uint64_t>();
            if (!rec.at("psnr_db").is_null()) img.psnr_db = rec.at("psnr_db").get<double>();
            m.images.push_back(std::move(img));
        }
        return m;
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

}  // namespace subpix
