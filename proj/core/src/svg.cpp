#include "mci/svg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mci/errors.hpp"
#include "mci/numfmt.hpp"

namespace mci::svg {

namespace {

constexpr double canvas_w = 800.0;
constexpr double canvas_h = 500.0;
constexpr double margin_left = 70.0;
constexpr double margin_right = 20.0;
constexpr double margin_top = 50.0;
constexpr double margin_bottom = 70.0;

constexpr const char* series_color = "#1f77b4";
constexpr const char* band_color = "#b0b0b0";
constexpr const char* axis_color = "#333333";

std::string px(double v) { return numfmt::to_string_fixed(v, 4); }

std::string escape_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

void line(std::ostringstream& s, double x1, double y1, double x2, double y2,
          const char* color, double width) {
    s << "  <line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2)
      << "\" y2=\"" << px(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
      << numfmt::to_string_sig(width) << "\"/>\n";
}

} // namespace

std::string render_error_bar_chart(const report::chart_spec& spec) {
    if (spec.series.empty()) throw insufficient_data_error("svg: chart has no series");
    if (!(spec.y_max > spec.y_min))
        throw std::domain_error("svg: y range must have positive extent");

    const double plot_w = canvas_w - margin_left - margin_right;
    const double plot_h = canvas_h - margin_top - margin_bottom;
    const double bottom = margin_top + plot_h;
    const auto y_of = [&](double v) {
        const double clamped = std::clamp(v, spec.y_min, spec.y_max);
        return bottom - (clamped - spec.y_min) / (spec.y_max - spec.y_min) * plot_h;
    };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
    s << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
    s << "  <text x=\"" << px(canvas_w / 2) << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"18\">"
      << escape_text(spec.title) << "</text>\n";

    // frame and y ticks
    line(s, margin_left, margin_top, margin_left, bottom, axis_color, 1.0);
    line(s, margin_left, bottom, canvas_w - margin_right, bottom, axis_color, 1.0);
    for (int t = 0; t <= 4; ++t) {
        const double v = spec.y_min + (spec.y_max - spec.y_min) * t / 4.0;
        const double y = y_of(v);
        line(s, margin_left - 5.0, y, margin_left, y, axis_color, 1.0);
        s << "  <text x=\"" << px(margin_left - 9.0) << "\" y=\"" << px(y + 4.0)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
          << numfmt::to_string_sig(v, 5) << "</text>\n";
    }

    const double slot = plot_w / static_cast<double>(spec.series.size());
    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const auto& series = spec.series[i];
        const double x = margin_left + slot * (static_cast<double>(i) + 0.5);

        s << "  <g class=\"series\">\n";
        if (series.half_width2) {
            const double lo = y_of(series.point - *series.half_width2);
            const double hi = y_of(series.point + *series.half_width2);
            s << "    <g class=\"whisker-band\">\n  ";
            line(s, x, hi, x, lo, band_color, 7.0);
            s << "  ";
            line(s, x - 10.0, hi, x + 10.0, hi, band_color, 3.0);
            s << "  ";
            line(s, x - 10.0, lo, x + 10.0, lo, band_color, 3.0);
            s << "    </g>\n";
        }
        {
            const double lo = y_of(series.point - series.half_width1);
            const double hi = y_of(series.point + series.half_width1);
            s << "    <g class=\"whisker\">\n  ";
            line(s, x, hi, x, lo, series_color, 2.0);
            s << "  ";
            line(s, x - 7.0, hi, x + 7.0, hi, series_color, 2.0);
            s << "  ";
            line(s, x - 7.0, lo, x + 7.0, lo, series_color, 2.0);
            s << "    </g>\n";
        }
        s << "    <circle cx=\"" << px(x) << "\" cy=\"" << px(y_of(series.point))
          << "\" r=\"4\" fill=\"" << series_color << "\"/>\n";
        s << "    <text x=\"" << px(x) << "\" y=\"" << px(bottom + 22.0)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
          << escape_text(series.label) << "</text>\n";
        s << "  </g>\n";
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace mci::svg
