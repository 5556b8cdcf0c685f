#include "conic/cli/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace conic::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kPanel = 260.0;
constexpr double kMargin = 60.0;

std::string panel(std::span<const double> x, std::span<const double> y, double top, const std::string& label,
                  const std::string& colour) {
    const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
    auto [ylo_it, yhi_it] = std::minmax_element(y.begin(), y.end());
    double ylo = *ylo_it, yhi = *yhi_it;
    if (yhi - ylo < 1e-12 * std::max(1.0, std::abs(yhi))) {
        ylo -= 0.5;
        yhi += 0.5;
    }
    const double w = kWidth - 2.0 * kMargin;
    const double h = kPanel - 50.0;
    const auto px = [&](double v) { return kMargin + w * (v - *xlo) / (*xhi - *xlo); };
    const auto py = [&](double v) { return top + 10.0 + h * (1.0 - (v - ylo) / (yhi - ylo)); };

    std::string s;
    s += fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#444"/>)", kMargin, top + 10.0,
                     w, h);
    s += '\n';
    std::string points;
    for (std::size_t i = 0; i < x.size(); ++i) points += fmt::format("{:.2f},{:.2f} ", px(x[i]), py(y[i]));
    s += fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)", colour, points);
    s += '\n';
    s += fmt::format(R"(<text x="{}" y="{}" font-size="12">{:.6g}</text>)", 4.0, top + 14.0, yhi) + '\n';
    s += fmt::format(R"(<text x="{}" y="{}" font-size="12">{:.6g}</text>)", 4.0, top + 10.0 + h, ylo) + '\n';
    s += fmt::format(R"(<text x="{}" y="{}" font-size="12">{:.3g}</text>)", kMargin, top + h + 26.0, *xlo) + '\n';
    s += fmt::format(R"(<text x="{}" y="{}" font-size="12" text-anchor="end">{:.3g}</text>)", kMargin + w,
                     top + h + 26.0, *xhi) + '\n';
    s += fmt::format(R"(<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>)", kMargin + 0.5 * w,
                     top + h + 40.0, label) + '\n';
    return s;
}

} // namespace

void write_profile_svg(const std::filesystem::path& path, std::span<const double> x, std::span<const double> v,
                       std::span<const double> curvature) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif">)",
                       kWidth, 2.0 * kPanel)
        << '\n';
    out << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
    out << panel(x, v, 0.0, "x vs conformal factor v", "#1f5fa8");
    out << panel(x, curvature, kPanel, "x vs scalar curvature of v^(4/(m-1)) g", "#b03a2e");
    out << "</svg>\n";
}

} // namespace conic::cli
