#include "rheaom/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rheaom {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    const int width = 720, height = 420;
    const int left = 60, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" << title << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n";

    size_t longest = 1;
    for (const auto& [name, values] : series) longest = std::max(longest, values.size());

    int color = 0;
    double legend_y = top + 14;
    for (const auto& [name, values] : series) {
        if (values.empty()) continue;
        double lo = values[0], hi = values[0];
        for (double v : values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 6] << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < values.size(); ++i) {
            const double x = left + (longest > 1 ? plot_w * static_cast<double>(i) / (longest - 1) : 0.0);
            const double y = top + plot_h - plot_h * (values[i] - lo) / (hi - lo);
            out << num(x) << ',' << num(y) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << left + 8 << "\" y=\"" << num(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << kColors[color % 6] << "\">"
            << name << " [" << num(lo) << ", " << num(hi) << "]</text>\n";
        legend_y += 14;
        ++color;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace rheaom
