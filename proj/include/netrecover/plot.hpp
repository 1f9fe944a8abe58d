#pragma once

// Static SVG rendering of experiment results, one panel row per m and one
// column per measure (Frobenius, Accuracy, Recovery), the x axis being
// sqrt(beta) * log(n) and one curve per n. Each curve point is the lower
// median over that grid point's trials.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netrecover/errors.hpp"
#include "netrecover/simulate.hpp"

namespace netrecover {

namespace detail {

struct Curve {
    int n = 0;
    std::vector<std::pair<double, double>> points; // (x, median), ascending x
};

inline std::string svg_num(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
}

} // namespace detail

inline std::string render_plot_svg(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("render_plot_svg: no records");

    std::vector<int> ms, ns;
    for (const TrialRecord& r : records) {
        ms.push_back(r.m);
        ns.push_back(r.n);
    }
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    // (m, n, x) -> per-measure trial values; map keys keep x ascending.
    std::map<std::pair<int, int>, std::map<double, std::vector<double>>> val[3];
    for (const TrialRecord& r : records) {
        const std::pair<int, int> key{r.m, r.n};
        val[0][key][r.sqrt_beta_log_n].push_back(r.frobenius);
        val[1][key][r.sqrt_beta_log_n].push_back(r.accuracy);
        val[2][key][r.sqrt_beta_log_n].push_back(r.recovery);
    }

    double xmin = records.front().sqrt_beta_log_n;
    double xmax = xmin;
    double fmax = 0.0;
    for (const TrialRecord& r : records) {
        xmin = std::min(xmin, r.sqrt_beta_log_n);
        xmax = std::max(xmax, r.sqrt_beta_log_n);
        fmax = std::max(fmax, r.frobenius);
    }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (fmax <= 0.0) fmax = 1.0;

    const char* titles[3] = {"Frobenius", "Accuracy", "Recovery"};
    const double ymax_by_col[3] = {fmax, 1.0, 1.0};
    const char* palette[6] = {"#1b6ca8", "#d1495b", "#2e933c", "#8a4fff", "#e0a100", "#4f6d7a"};

    const double panel_w = 280.0, panel_h = 200.0;
    const double left = 64.0, right = 16.0, top = 36.0, bottom = 44.0;
    const double cell_w = left + panel_w + right;
    const double cell_h = top + panel_h + bottom;
    const double legend_h = 28.0;
    const double width = 3 * cell_w;
    const double height = ms.size() * cell_h + legend_h;

    using detail::svg_num;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(width)
        << "\" height=\"" << svg_num(height) << "\" viewBox=\"0 0 " << svg_num(width) << " "
        << svg_num(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double lx = 16.0 + 110.0 * i;
        svg << "<circle cx=\"" << svg_num(lx) << "\" cy=\"14\" r=\"4\" fill=\""
            << palette[i % 6] << "\"/>\n";
        svg << "<text x=\"" << svg_num(lx + 10.0)
            << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">n=" << ns[i]
            << "</text>\n";
    }

    for (std::size_t row = 0; row < ms.size(); ++row) {
        for (int col = 0; col < 3; ++col) {
            const double ox = col * cell_w + left;
            const double oy = legend_h + row * cell_h + top;
            const double ymax = ymax_by_col[col];
            const auto to_px = [&](double x, double y) {
                const double px = ox + (x - xmin) / (xmax - xmin) * panel_w;
                const double py = oy + panel_h - y / ymax * panel_h;
                return std::pair<double, double>{px, py};
            };

            svg << "<text x=\"" << svg_num(ox + panel_w / 2) << "\" y=\"" << svg_num(oy - 12.0)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
                << titles[col] << ", m=" << ms[row] << "</text>\n";
            svg << "<rect x=\"" << svg_num(ox) << "\" y=\"" << svg_num(oy) << "\" width=\""
                << svg_num(panel_w) << "\" height=\"" << svg_num(panel_h)
                << "\" fill=\"none\" stroke=\"#444444\"/>\n";

            for (int tick = 0; tick <= 2; ++tick) {
                const double ty = ymax * tick / 2.0;
                const auto [px, py] = to_px(xmin, ty);
                svg << "<text x=\"" << svg_num(px - 6.0) << "\" y=\"" << svg_num(py + 4.0)
                    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
                    << format_double(ty) << "</text>\n";
            }
            for (int tick = 0; tick <= 2; ++tick) {
                const double tx = xmin + (xmax - xmin) * tick / 2.0;
                const auto [px, py] = to_px(tx, 0.0);
                svg << "<text x=\"" << svg_num(px) << "\" y=\"" << svg_num(py + 16.0)
                    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
                    << format_double(tx) << "</text>\n";
            }
            if (row + 1 == ms.size())
                svg << "<text x=\"" << svg_num(ox + panel_w / 2) << "\" y=\""
                    << svg_num(oy + panel_h + 34.0)
                    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
                    << "sqrt(beta) log n</text>\n";

            for (std::size_t ni = 0; ni < ns.size(); ++ni) {
                const auto it = val[col].find({ms[row], ns[ni]});
                if (it == val[col].end()) continue;
                detail::Curve curve;
                curve.n = ns[ni];
                for (const auto& [x, vals] : it->second)
                    curve.points.emplace_back(x, lower_median(vals));
                const char* color = palette[ni % 6];
                if (curve.points.size() > 1) {
                    svg << "<polyline fill=\"none\" stroke=\"" << color
                        << "\" stroke-width=\"1.5\" points=\"";
                    for (std::size_t k = 0; k < curve.points.size(); ++k) {
                        const auto [px, py] = to_px(curve.points[k].first, curve.points[k].second);
                        if (k) svg << ' ';
                        svg << svg_num(px) << ',' << svg_num(py);
                    }
                    svg << "\"/>\n";
                }
                for (const auto& [x, y] : curve.points) {
                    const auto [px, py] = to_px(x, y);
                    svg << "<circle cx=\"" << svg_num(px) << "\" cy=\"" << svg_num(py)
                        << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
                }
            }
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

inline void save_plot_svg(const std::string& path, const std::vector<TrialRecord>& records) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot open for writing");
    out << render_plot_svg(records);
    if (!out) throw io_error(path + ": write failed");
}

} // namespace netrecover
