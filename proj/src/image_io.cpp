#include "subpix/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace subpix {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw IoError(path.string() + ": " + what);
}

// Skips PGM whitespace and '#' comments, then parses one unsigned integer.
unsigned parse_pgm_int(std::istream& in, const std::filesystem::path& path) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) fail(path, "malformed PGM header");
    unsigned value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + static_cast<unsigned>(c - '0');
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

void put_u32le(std::ostream& out, std::uint32_t v) {
    const unsigned char bytes[4] = {
        static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t get_u32le(std::istream& in) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) |
           (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_f64le(std::ostream& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_f64le(std::istream& in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

Grid read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') fail(path, "not a binary PGM (P5)");
    const unsigned width = parse_pgm_int(in, path);
    const unsigned height = parse_pgm_int(in, path);
    const unsigned maxval = parse_pgm_int(in, path);
    if (width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20)) {
        fail(path, "bad dimensions");
    }
    if (maxval == 0 || maxval > 65535) fail(path, "unsupported maxval");
    in.get();  // single whitespace before raster

    const std::size_t n = static_cast<std::size_t>(width) * height;
    const bool wide = maxval > 255;
    std::vector<unsigned char> raw(n * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) fail(path, "truncated raster");

    std::vector<double> values(n);
    if (wide) {
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = static_cast<double>((static_cast<unsigned>(raw[2 * i]) << 8) |
                                            raw[2 * i + 1]);  // big-endian per PGM
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) values[i] = raw[i];
    }
    return Grid(static_cast<int>(width), static_cast<int>(height), std::move(values));
}

void write_pgm(const std::filesystem::path& path, const Grid& grid, int maxval) {
    if (maxval < 1 || maxval > 65535) {
        throw std::invalid_argument("write_pgm: maxval must be in [1, 65535]");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << grid.width() << " " << grid.height() << "\n" << maxval << "\n";
    const bool wide = maxval > 255;
    for (double v : grid.data()) {
        const long q = std::clamp(std::lround(v), 0L, static_cast<long>(maxval));
        if (wide) out.put(static_cast<char>((q >> 8) & 0xff));
        out.put(static_cast<char>(q & 0xff));
    }
    if (!out) fail(path, "write failed");
}

Grid read_f64g(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "F64G", 4) != 0) fail(path, "bad F64G magic");
    const std::uint32_t width = get_u32le(in);
    const std::uint32_t height = get_u32le(in);
    if (!in || width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20)) {
        fail(path, "bad F64G dimensions");
    }
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = get_f64le(in);
    if (!in) fail(path, "truncated F64G payload");
    try {
        return Grid(static_cast<int>(width), static_cast<int>(height), std::move(values));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

void write_f64g(const std::filesystem::path& path, const Grid& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out.write("F64G", 4);
    put_u32le(out, static_cast<std::uint32_t>(grid.width()));
    put_u32le(out, static_cast<std::uint32_t>(grid.height()));
    for (double v : grid.data()) put_f64le(out, v);
    if (!out) fail(path, "write failed");
}

Grid read_image(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".pgm") return read_pgm(path);
    if (ext == ".f64g") return read_f64g(path);
    throw IoError(path.string() + ": unsupported image extension '" + ext +
                  "' (expected .pgm or .f64g)");
}

}  // namespace subpix
