// subpix: dataset generation, single-pair registration, accuracy sweeps and
// timing benchmarks for subpixel translation estimators.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage/validation error,
// 3 algorithmic failure (flat correlation surface and similar).

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subpix/baselines.hpp"
#include "subpix/datagen.hpp"
#include "subpix/errors.hpp"
#include "subpix/evaluate.hpp"
#include "subpix/image_io.hpp"
#include "subpix/manifest.hpp"
#include "subpix/registration.hpp"
#include "subpix/version.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace subpix;

namespace {

struct AlgoParams {
    double radius = 3.0;
    int min_pixels = 3;
    int kappa = 100;
    double window = 1.5;
    double rho = 0.6;
};

const std::vector<std::string> kAllAlgos = {"centroid", "upsampled-dft", "phase-slope"};

Algorithm make_algorithm(const std::string& name, const AlgoParams& p) {
    if (name == "centroid") {
        const CentroidConfig cfg{p.radius, p.min_pixels};
        return {name, [cfg](const Grid& r, const Grid& t) { return register_translation(r, t, cfg); }};
    }
    if (name == "upsampled-dft") {
        const UpsampleConfig cfg{p.kappa, p.window};
        return {name, [cfg](const Grid& r, const Grid& t) { return register_upsampled_dft(r, t, cfg); }};
    }
    if (name == "phase-slope") {
        const PhaseSlopeConfig cfg{p.rho};
        return {name, [cfg](const Grid& r, const Grid& t) { return register_phase_slope(r, t, cfg); }};
    }
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<std::string> split_csv(const std::string& value) {
    std::vector<std::string> out;
    std::string token;
    for (char c : value) {
        if (c == ',') {
            if (!token.empty()) out.push_back(token);
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) out.push_back(token);
    return out;
}

// "10:2:40" (start:step:stop, inclusive), plain numbers, and "clean" may be
// mixed in one comma-separated list.
std::vector<std::optional<double>> parse_psnr_levels(const std::string& spec) {
    std::vector<std::optional<double>> levels;
    for (const auto& token : split_csv(spec)) {
        if (token == "clean") {
            levels.push_back(std::nullopt);
            continue;
        }
        const auto c1 = token.find(':');
        if (c1 == std::string::npos) {
            levels.push_back(std::stod(token));
            continue;
        }
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string::npos) {
            throw std::invalid_argument("bad PSNR range '" + token + "' (want start:step:stop)");
        }
        const double start = std::stod(token.substr(0, c1));
        const double step = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
        const double stop = std::stod(token.substr(c2 + 1));
        if (!(step > 0.0) || stop < start) {
            throw std::invalid_argument("bad PSNR range '" + token + "'");
        }
        for (double v = start; v <= stop + 1e-9; v += step) levels.push_back(v);
    }
    if (levels.empty()) throw std::invalid_argument("empty PSNR list");
    return levels;
}

std::string fmt(const char* format, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string fmt_psnr(const std::optional<double>& p) {
    return p.has_value() ? fmt("%g", *p) : std::string("clean");
}

void announce(const fs::path& path) { std::cout << "wrote " << path.string() << "\n"; }

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

Dataset load_dataset(const fs::path& dir) {
    const fs::path manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path)) {
        throw std::invalid_argument("no manifest.json in " + dir.string());
    }
    const Manifest manifest = load_manifest(manifest_path);
    Dataset dataset{read_image(dir / manifest.reference), {}};
    dataset.items.reserve(manifest.images.size());
    for (const auto& img : manifest.images) {
        dataset.items.push_back(
            DatasetItem{read_image(dir / img.file), Displacement{img.dx, img.dy}});
    }
    return dataset;
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepResult>& results,
                     std::uint64_t seed, const std::string& psnr_spec) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << "# subpix " << kVersion << " accuracy sweep\n";
    out << "# psnr_db: 10*log10(peak^2/MSE), peak = max of clean image; noise applied"
           " independently to reference and target\n";
    out << "# std_err_px: population std of per-trial Euclidean error magnitude;"
           " failures excluded from statistics\n";
    out << "# seed: " << seed << "\n";
    out << "# psnr_levels: " << psnr_spec << "\n";
    out << "algorithm,psnr_db,n,failures,std_err_px,mean_abs_err_px,max_err_px,mean_time_us\n";
    for (const auto& r : results) {
        out << r.algorithm << ',' << fmt_psnr(r.psnr_db) << ',' << r.n << ',' << r.failures << ','
            << fmt("%.9g", r.std_err_px) << ',' << fmt("%.9g", r.mean_abs_err_px) << ','
            << fmt("%.9g", r.max_err_px) << ',' << fmt("%.3f", r.mean_time_us) << "\n";
    }
    if (!out) throw IoError(path.string() + ": write failed");
}

std::string fixed6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    if (std::strcmp(buf, "-0.000000") == 0) return "0.000000";
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"subpixel image registration and benchmarking"};
    app.set_version_flag("--version", std::string("subpix ") + kVersion);
    app.require_subcommand(1);

    AlgoParams params;
    std::uint64_t seed = 1;
    std::string out_dir = ".";

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate benchmark datasets");
    gen->require_subcommand(1);

    auto* gen_syn = gen->add_subcommand("synthetic", "Gaussian-mixture images with exact shifts");
    int pairs = 100, size = 128, components = 200;
    gen_syn->add_option("--seed", seed, "dataset seed")->capture_default_str();
    gen_syn->add_option("--pairs", pairs, "number of shifted images")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_syn->add_option("--size", size, "image side in pixels")
        ->check(CLI::Range(8, 4096))
        ->capture_default_str();
    gen_syn->add_option("--components", components, "Gaussians per mixture")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_syn->add_option("--out", out_dir, "output directory")->capture_default_str();

    auto* gen_down = gen->add_subcommand("downsample",
                                         "fractional shifts by box filter and decimation");
    std::string input_path;
    int factor = 16, crop = 128;
    gen_down->add_option("--input", input_path, "high-resolution source image (.pgm/.f64g)")
        ->required();
    gen_down->add_option("--factor", factor, "downsampling factor D")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_down->add_option("--crop", crop, "output image side in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_down->add_option("--seed", seed, "recorded dataset seed")->capture_default_str();
    gen_down->add_option("--out", out_dir, "output directory")->capture_default_str();

    // --- register ---
    auto* reg = app.add_subcommand("register", "estimate the shift between two images");
    std::string ref_path, tgt_path, algo = "centroid";
    reg->add_option("reference", ref_path, "reference image")->required();
    reg->add_option("target", tgt_path, "target image")->required();
    reg->add_option("--algo", algo, "registration algorithm")
        ->check(CLI::IsMember(kAllAlgos))
        ->capture_default_str();
    reg->add_option("--radius", params.radius, "centroid circle radius (px)")
        ->capture_default_str();
    reg->add_option("--min-pixels", params.min_pixels, "minimum pixels above threshold")
        ->capture_default_str();
    reg->add_option("--kappa", params.kappa, "upsampling factor")->capture_default_str();
    reg->add_option("--window", params.window, "upsampled search half-window (px)")
        ->capture_default_str();
    reg->add_option("--rho", params.rho, "phase-slope frequency disc fraction")
        ->capture_default_str();

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "accuracy vs PSNR over a generated dataset");
    std::string dataset_dir, algos_csv = "centroid,upsampled-dft,phase-slope";
    std::string psnr_spec = "10:2:40", csv_out = "sweep.csv", svg_out;
    sweep->add_option("--dataset", dataset_dir, "dataset directory (with manifest.json)")
        ->required();
    sweep->add_option("--algos", algos_csv, "comma-separated algorithms")->capture_default_str();
    sweep->add_option("--psnr", psnr_spec, "levels: start:step:stop, numbers, 'clean'")
        ->capture_default_str();
    sweep->add_option("--seed", seed, "noise seed")->capture_default_str();
    sweep->add_option("--out", csv_out, "output CSV path")->capture_default_str();
    sweep->add_option("--svg", svg_out, "also plot curves to this SVG");
    sweep->add_option("--radius", params.radius, "centroid circle radius (px)")
        ->capture_default_str();
    sweep->add_option("--min-pixels", params.min_pixels, "minimum pixels above threshold")
        ->capture_default_str();
    sweep->add_option("--kappa", params.kappa, "upsampling factor")->capture_default_str();
    sweep->add_option("--window", params.window, "upsampled search half-window (px)")
        ->capture_default_str();
    sweep->add_option("--rho", params.rho, "phase-slope frequency disc fraction")
        ->capture_default_str();

    // --- bench ---
    auto* bench = app.add_subcommand("bench", "single-threaded registration timings");
    int reps = 11, warmup = 3, bench_size = 128;
    std::string bench_algos = "centroid,upsampled-dft,phase-slope";
    bench->add_option("--size", bench_size, "image side in pixels")
        ->check(CLI::Range(16, 4096))
        ->capture_default_str();
    bench->add_option("--algos", bench_algos, "comma-separated algorithms")
        ->capture_default_str();
    bench->add_option("--reps", reps, "timed repetitions (median reported)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--warmup", warmup, "discarded warmup runs")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    bench->add_option("--seed", seed, "pair-generation seed")->capture_default_str();
    bench->add_option("--radius", params.radius, "centroid circle radius (px)")
        ->capture_default_str();
    bench->add_option("--min-pixels", params.min_pixels, "minimum pixels above threshold")
        ->capture_default_str();
    bench->add_option("--kappa", params.kappa, "upsampling factor")->capture_default_str();
    bench->add_option("--window", params.window, "upsampled search half-window (px)")
        ->capture_default_str();
    bench->add_option("--rho", params.rho, "phase-slope frequency disc fraction")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string command = join_args(argc, argv);

    if (gen_syn->parsed()) {
        const Dataset dataset = sample_dataset1(seed, pairs, size, components);
        const fs::path dir(out_dir);
        fs::create_directories(dir);

        Manifest manifest;
        manifest.tool = "subpix";
        manifest.version = kVersion;
        manifest.kind = "synthetic";
        manifest.command = command;
        manifest.seed = seed;
        manifest.params = {{"pairs", static_cast<double>(pairs)},
                           {"size", static_cast<double>(size)},
                           {"components", static_cast<double>(components)}};
        manifest.reference = "reference.f64g";
        write_f64g(dir / manifest.reference, dataset.reference);
        announce(dir / manifest.reference);
        for (std::size_t i = 0; i < dataset.items.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "shift_%04zu.f64g", i);
            write_f64g(dir / name, dataset.items[i].image);
            announce(dir / name);
            manifest.images.push_back(ManifestImage{name, dataset.items[i].truth.dx,
                                                    dataset.items[i].truth.dy, std::nullopt,
                                                    seed});
        }
        save_manifest(dir / "manifest.json", manifest);
        announce(dir / "manifest.json");
        return 0;
    }

    if (gen_down->parsed()) {
        const Grid source = read_image(input_path);
        const Dataset dataset = make_dataset2(source, factor, crop);
        const fs::path dir(out_dir);
        fs::create_directories(dir);

        Manifest manifest;
        manifest.tool = "subpix";
        manifest.version = kVersion;
        manifest.kind = "downsample";
        manifest.command = command;
        manifest.seed = seed;
        manifest.params = {{"factor", static_cast<double>(factor)},
                           {"crop", static_cast<double>(crop)}};
        const auto tile_name = [&](double dx, double dy) {
            char name[48];
            std::snprintf(name, sizeof name, "tile_u%+03d_v%+03d.f64g",
                          static_cast<int>(std::lround(dx * factor)),
                          static_cast<int>(std::lround(dy * factor)));
            return std::string(name);
        };
        manifest.reference = tile_name(0.0, 0.0);
        write_f64g(dir / manifest.reference, dataset.reference);
        announce(dir / manifest.reference);
        for (const auto& item : dataset.items) {
            const std::string name = tile_name(item.truth.dx, item.truth.dy);
            write_f64g(dir / name, item.image);
            announce(dir / name);
            manifest.images.push_back(
                ManifestImage{name, item.truth.dx, item.truth.dy, std::nullopt, seed});
        }
        save_manifest(dir / "manifest.json", manifest);
        announce(dir / "manifest.json");
        return 0;
    }

    if (reg->parsed()) {
        const Grid reference = read_image(ref_path);
        const Grid target = read_image(tgt_path);
        const Displacement d = make_algorithm(algo, params).run(reference, target);
        std::cout << "dx=" << fixed6(d.dx) << " dy=" << fixed6(d.dy) << "\n";
        return 0;
    }

    if (sweep->parsed()) {
        const Dataset dataset = load_dataset(dataset_dir);
        std::vector<Algorithm> algorithms;
        for (const auto& name : split_csv(algos_csv)) {
            algorithms.push_back(make_algorithm(name, params));
        }
        const auto levels = parse_psnr_levels(psnr_spec);
        const auto results = accuracy_sweep(dataset, algorithms, levels, seed);
        write_sweep_csv(csv_out, results, seed, psnr_spec);
        announce(csv_out);
        if (!svg_out.empty()) {
            plot::write_sweep_svg(svg_out, results);
            announce(svg_out);
        }
        return 0;
    }

    if (bench->parsed()) {
        const Dataset dataset = sample_dataset1(seed, 1, bench_size);
        const Grid& reference = dataset.reference;
        const Grid& target = dataset.items.front().image;
        std::cout << "algorithm,size,reps,median_time_us\n";
        for (const auto& name : split_csv(bench_algos)) {
            const Algorithm algorithm = make_algorithm(name, params);
            const double us = time_registration(algorithm.run, reference, target, warmup, reps);
            std::cout << name << ',' << bench_size << ',' << reps << ',' << fmt("%.1f", us)
                      << "\n";
        }
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const RegistrationError& e) {
        std::cerr << "registration failed: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
