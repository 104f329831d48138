#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "subpix/evaluate.hpp"
#include "subpix/image_io.hpp"

namespace subpix::plot {

// Minimal accuracy-vs-PSNR chart: linear axes, one polyline per algorithm.
// Clean (no-noise) rows have no x position and are skipped.
inline void write_sweep_svg(const std::filesystem::path& path,
                            const std::vector<SweepResult>& results) {
    struct Series {
        std::vector<std::pair<double, double>> points;  // (psnr_db, std_err_px)
    };
    std::map<std::string, Series> series;
    double x_min = 1e300, x_max = -1e300, y_max = 0.0;
    for (const auto& r : results) {
        if (!r.psnr_db.has_value() || r.n == 0) continue;
        series[r.algorithm].points.emplace_back(*r.psnr_db, r.std_err_px);
        x_min = std::min(x_min, *r.psnr_db);
        x_max = std::max(x_max, *r.psnr_db);
        y_max = std::max(y_max, r.std_err_px);
    }
    if (series.empty() || x_min >= x_max) return;
    if (y_max <= 0.0) y_max = 1e-6;
    y_max *= 1.05;

    const double width = 640, height = 480;
    const double ml = 70, mr = 20, mt = 20, mb = 50;
    const auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr); };
    const auto sy = [&](double y) { return height - mb - y / y_max * (height - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ml, height - mb, width - mr, height - mb);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ml, mt, ml, height - mb);
    out << buf;
    out << "<text x=\"" << (width / 2) << "\" y=\"" << (height - 12)
        << "\" text-anchor=\"middle\" font-size=\"14\">PSNR (dB)</text>\n";
    out << "<text x=\"16\" y=\"" << (height / 2)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
        << (height / 2) << ")\">std of error magnitude (px)</text>\n";

    // x ticks at each swept level, y ticks at quarters
    for (const auto& [name, s] : series) {
        for (const auto& [x, y] : s.points) {
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                          "stroke=\"black\"/>\n",
                          sx(x), height - mb, sx(x), height - mb + 4);
            out << buf;
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                          "font-size=\"11\">%g</text>\n",
                          sx(x), height - mb + 16, x);
            out << buf;
        }
        break;
    }
    for (int i = 0; i <= 4; ++i) {
        const double yv = y_max * i / 4.0;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"11\">"
                      "%.3g</text>\n",
                      ml - 6, sy(yv) + 4, yv);
        out << buf;
    }

    int idx = 0;
    for (auto& [name, s] : series) {
        std::sort(s.points.begin(), s.points.end());
        const char* color = palette[idx % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(x), sy(y));
            out << buf;
        }
        out << "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                      width - mr - 150.0, mt + 18.0 * (idx + 1), color, name.c_str());
        out << buf;
        ++idx;
    }
    out << "</svg>\n";
    if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace subpix::plot
