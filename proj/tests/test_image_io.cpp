#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "subpix/image_io.hpp"
#include "subpix/manifest.hpp"
#include "subpix/rng.hpp"

using namespace subpix;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("subpix_io_test_" + std::to_string(rng::mix(std::random_device{}(), 0)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("f64g round-trips bit-for-bit") {
    TempDir tmp;
    const std::vector<double> values = {0.0, -0.0, 1e-300, -1e300, 0.1, 1.0 / 3.0};
    const Grid g(3, 2, values);
    const fs::path file = tmp.path / "grid.f64g";
    write_f64g(file, g);
    const Grid back = read_f64g(file);
    CHECK(back.width() == 3);
    CHECK(back.height() == 2);
    for (std::size_t i = 0; i < values.size(); ++i) {
        // bit-level comparison so -0.0 and denormals are preserved too
        CHECK(std::memcmp(&back.data()[i], &values[i], sizeof(double)) == 0);
    }
}

TEST_CASE("f64g rejects bad files") {
    TempDir tmp;
    const fs::path bad_magic = tmp.path / "bad.f64g";
    std::ofstream(bad_magic, std::ios::binary) << "NOPE1234";
    CHECK_THROWS_AS(read_f64g(bad_magic), IoError);

    const fs::path truncated = tmp.path / "short.f64g";
    {
        const Grid g(4, 4, std::vector<double>(16, 1.0));
        write_f64g(truncated, g);
        fs::resize_file(truncated, 40);
    }
    CHECK_THROWS_AS(read_f64g(truncated), IoError);

    CHECK_THROWS_AS(read_f64g(tmp.path / "missing.f64g"), IoError);
}

TEST_CASE("pgm 8-bit round trip with comments") {
    TempDir tmp;
    const fs::path file = tmp.path / "img.pgm";
    {
        std::ofstream out(file, std::ios::binary);
        out << "P5\n# a comment\n3 2\n255\n";
        const unsigned char raster[6] = {0, 1, 2, 253, 254, 255};
        out.write(reinterpret_cast<const char*>(raster), 6);
    }
    const Grid g = read_pgm(file);
    CHECK(g.width() == 3);
    CHECK(g.height() == 2);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(2, 1) == 255.0);

    const fs::path out_file = tmp.path / "out.pgm";
    write_pgm(out_file, g, 255);
    const Grid back = read_pgm(out_file);
    CHECK(back.data() == g.data());
}

TEST_CASE("pgm 16-bit uses big-endian samples") {
    TempDir tmp;
    const fs::path file = tmp.path / "img16.pgm";
    {
        std::ofstream out(file, std::ios::binary);
        out << "P5\n2 1\n65535\n";
        const unsigned char raster[4] = {0x01, 0x02, 0xff, 0xfe};  // 258, 65534
        out.write(reinterpret_cast<const char*>(raster), 4);
    }
    const Grid g = read_pgm(file);
    CHECK(g(0, 0) == 258.0);
    CHECK(g(1, 0) == 65534.0);

    const fs::path out_file = tmp.path / "out16.pgm";
    write_pgm(out_file, g, 65535);
    CHECK(read_pgm(out_file).data() == g.data());
}

TEST_CASE("pgm rejects malformed input") {
    TempDir tmp;
    const fs::path not_pgm = tmp.path / "x.pgm";
    std::ofstream(not_pgm, std::ios::binary) << "P6\n1 1\n255\n...";
    CHECK_THROWS_AS(read_pgm(not_pgm), IoError);

    const fs::path short_raster = tmp.path / "short.pgm";
    std::ofstream(short_raster, std::ios::binary) << "P5\n4 4\n255\nab";
    CHECK_THROWS_AS(read_pgm(short_raster), IoError);
}

TEST_CASE("read_image dispatches on extension") {
    TempDir tmp;
    const Grid g(2, 2, {1, 2, 3, 4});
    write_f64g(tmp.path / "a.f64g", g);
    CHECK(read_image(tmp.path / "a.f64g").data() == g.data());
    write_pgm(tmp.path / "a.pgm", g, 255);
    CHECK(read_image(tmp.path / "a.pgm").data() == g.data());
    CHECK_THROWS_AS(read_image(tmp.path / "a.bmp"), IoError);
}

TEST_CASE("manifest round trip") {
    TempDir tmp;
    Manifest m;
    m.tool = "subpix";
    m.version = "0.1.0";
    m.kind = "synthetic";
    m.command = "subpix gen synthetic --seed 7";
    m.seed = 7;
    m.params = {{"pairs", 2.0}, {"size", 128.0}};
    m.reference = "reference.f64g";
    m.images = {{"shift_0000.f64g", 0.25, -0.375, std::nullopt, 7},
                {"shift_0001.f64g", -0.5, 0.125, 20.0, 7}};
    const fs::path file = tmp.path / "manifest.json";
    save_manifest(file, m);

    const Manifest back = load_manifest(file);
    CHECK(back.tool == m.tool);
    CHECK(back.kind == m.kind);
    CHECK(back.seed == m.seed);
    CHECK(back.params.at("pairs") == 2.0);
    CHECK(back.reference == m.reference);
    REQUIRE(back.images.size() == 2);
    CHECK(back.images[0].dx == 0.25);
    CHECK(back.images[0].dy == -0.375);
    CHECK_FALSE(back.images[0].psnr_db.has_value());
    CHECK(back.images[1].psnr_db == 20.0);

    CHECK_THROWS_AS(load_manifest(tmp.path / "none.json"), IoError);
    std::ofstream(tmp.path / "bad.json") << "{ not json";
    CHECK_THROWS_AS(load_manifest(tmp.path / "bad.json"), IoError);
}
