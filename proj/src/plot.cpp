#include "mixup/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace mixup::plot {

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

void header(std::ostringstream& os, double w, double h)
{
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
       << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

namespace {

struct Panel {
    std::string body;
    double height;
};

Panel barcode_panel(const MixupBarcode& bc, const Style& style)
{
    double cap = 0.0;
    for (const auto& t : bc.triples)
        for (double v : {t.birth, t.image_death, t.death})
            if (std::isfinite(v)) cap = std::max(cap, v);
    if (bc.clamp) cap = *bc.clamp;
    if (cap <= 0.0) cap = 1.0;

    struct Bar {
        double b, dp, d;
    };
    std::vector<Bar> bars;
    for (const auto& t : bc.triples)
        bars.push_back({std::min(t.birth, cap), std::min(t.image_death, cap), std::min(t.death, cap)});
    std::stable_sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) {
        if (x.b != y.b) return x.b < y.b;
        return (x.d - x.b) > (y.d - y.b);
    });

    const double m = style.margin;
    const double plot_w = style.width - 2 * m;
    const double row = style.bar_height + style.bar_gap;
    const double height = 2 * m + row * static_cast<double>(bars.size()) + 20.0;
    auto x_of = [&](double v) { return m + plot_w * v / cap; };

    std::ostringstream os;
    const std::string title = style.title.empty() ? "mixup barcode, degree " + std::to_string(bc.degree) : style.title;
    os << "<text x=\"" << num(m) << "\" y=\"" << num(m * 0.6) << "\" font-family=\"sans-serif\" font-size=\"12\">"
       << escape(title) << "</text>\n";

    double y = m;
    for (const auto& bar : bars) {
        os << "<g class=\"bar\">";
        os << "<rect class=\"image\" x=\"" << num(x_of(bar.b)) << "\" y=\"" << num(y) << "\" width=\""
           << num(x_of(bar.dp) - x_of(bar.b)) << "\" height=\"" << num(style.bar_height) << "\" fill=\""
           << style.image_color << "\"/>";
        os << "<rect class=\"mixup\" x=\"" << num(x_of(bar.dp)) << "\" y=\"" << num(y) << "\" width=\""
           << num(x_of(bar.d) - x_of(bar.dp)) << "\" height=\"" << num(style.bar_height) << "\" fill=\""
           << style.mixup_color << "\"/>";
        os << "</g>\n";
        y += row;
    }

    const double axis_y = y + 4.0;
    os << "<line class=\"axis\" x1=\"" << num(m) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(m + plot_w)
       << "\" y2=\"" << num(axis_y) << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = cap * tick / 4.0;
        os << "<text x=\"" << num(x_of(v)) << "\" y=\"" << num(axis_y + 14.0)
           << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << num(v) << "</text>\n";
    }
    return {os.str(), height};
}

}  // namespace

std::string mixup_barcode_svg(const MixupBarcode& bc, const Style& style)
{
    const auto panel = barcode_panel(bc, style);
    std::ostringstream os;
    header(os, style.width, panel.height);
    os << panel.body << "</svg>\n";
    return os.str();
}

std::string mixup_barcodes_svg(std::span<const MixupBarcode> barcodes, const Style& style)
{
    std::vector<Panel> panels;
    double total = 0.0;
    for (const auto& bc : barcodes) {
        panels.push_back(barcode_panel(bc, style));
        total += panels.back().height;
    }
    if (panels.empty()) total = 2 * style.margin;
    std::ostringstream os;
    header(os, style.width, total);
    double y = 0.0;
    for (const auto& p : panels) {
        os << "<g transform=\"translate(0," << num(y) << ")\">\n" << p.body << "</g>\n";
        y += p.height;
    }
    os << "</svg>\n";
    return os.str();
}

std::string matrix_svg(const std::vector<std::string>& row_names, const std::vector<std::string>& col_names,
                       const Matrix& values, const Style& style)
{
    double vmax = 0.0;
    for (const auto& r : values)
        for (double v : r)
            if (std::isfinite(v)) vmax = std::max(vmax, v);
    // percentages live in [0, 1]; larger values (total percentages) rescale
    vmax = std::max(vmax, 1.0);

    const double m = style.margin;
    const double cell = 28.0;
    const double w = 2 * m + cell * static_cast<double>(col_names.size());
    const double h = 2 * m + cell * static_cast<double>(row_names.size());
    std::ostringstream os;
    header(os, w, h);
    if (!style.title.empty())
        os << "<text x=\"" << num(m) << "\" y=\"" << num(m * 0.4) << "\" font-family=\"sans-serif\" font-size=\"12\">"
           << escape(style.title) << "</text>\n";
    for (std::size_t j = 0; j < col_names.size(); ++j)
        os << "<text x=\"" << num(m + cell * (static_cast<double>(j) + 0.5)) << "\" y=\"" << num(m - 4.0)
           << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << escape(col_names[j])
           << "</text>\n";
    for (std::size_t i = 0; i < row_names.size(); ++i) {
        os << "<text x=\"" << num(m - 4.0) << "\" y=\"" << num(m + cell * (static_cast<double>(i) + 0.6))
           << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << escape(row_names[i])
           << "</text>\n";
        for (std::size_t j = 0; j < col_names.size() && j < values[i].size(); ++j) {
            const double t = std::clamp(values[i][j] / vmax, 0.0, 1.0);
            const int shade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            char color[16];
            std::snprintf(color, sizeof color, "#%02x%02xff", shade, shade);
            os << "<rect x=\"" << num(m + cell * static_cast<double>(j)) << "\" y=\""
               << num(m + cell * static_cast<double>(i)) << "\" width=\"" << num(cell) << "\" height=\"" << num(cell)
               << "\" fill=\"" << color << "\"><title>" << num(values[i][j]) << "</title></rect>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace mixup::plot
