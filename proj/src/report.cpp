/* Copyright 2026 The sigaxial Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include "sigaxial/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sigaxial/errors.hpp"

namespace sigaxial {

std::optional<double> ExperimentReport::summary_value(const std::string& key) const {
    for (const auto& [name, value] : summary) {
        if (name == key) {
            return value;
        }
    }
    return std::nullopt;
}

std::vector<double> ExperimentReport::column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw ConfigError("report has no column '" + name + "'");
    }
    const auto index = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.at(index));
    }
    return out;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == std::floor(value) && std::abs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    return nlohmann::json(value).dump();
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
    for (const auto& [key, value] : report.config_echo) {
        out << "# " << key << '=' << value << '\n';
    }
    for (const auto& [key, value] : report.summary) {
        out << "# summary." << key << '=' << format_number(value) << '\n';
    }
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        out << (c == 0 ? "" : ",") << report.columns[c];
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c == 0 ? "" : ",") << format_number(row[c]);
        }
        out << '\n';
    }
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    double map(double v) const { return log ? std::log10(v) : v; }
};

void fit_axis(Axis& axis, const std::vector<double>& values) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (axis.usable(v)) {
            lo = std::min(lo, axis.map(v));
            hi = std::max(hi, axis.map(v));
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    if (axis.log) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
    } else {
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    axis.lo = lo;
    axis.hi = hi;
}

std::vector<double> ticks(const Axis& axis) {
    std::vector<double> out;
    if (axis.log) {
        const double span = axis.hi - axis.lo;
        const double step = std::max(1.0, std::ceil(span / 8.0));
        for (double t = axis.lo; t <= axis.hi + 1e-9; t += step) {
            out.push_back(t);
        }
        return out;
    }
    const double raw = (axis.hi - axis.lo) / 5.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    double step = magnitude;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mult * magnitude >= raw) {
            step = mult * magnitude;
            break;
        }
    }
    for (double t = std::ceil(axis.lo / step) * step; t <= axis.hi + 1e-12; t += step) {
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
}

std::string tick_label(const Axis& axis, double t) {
    if (axis.log) {
        return "1e" + std::to_string(static_cast<int>(std::lround(t)));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

}  // namespace

std::string emit_svg_plot(const ExperimentReport& report, PlotKind kind) {
    if (report.rows.empty() && report.series.empty()) {
        throw ConfigError("cannot plot an empty report");
    }
    std::vector<PlotSeries> series = report.series;
    if (series.empty()) {
        // default: first column against every other column
        const auto x = report.column(report.columns.front());
        for (std::size_t c = 1; c < report.columns.size(); ++c) {
            series.push_back({report.columns[c], x, report.column(report.columns[c]), false});
        }
    }

    Axis ax;
    Axis ay;
    ax.log = kind == PlotKind::loglog || kind == PlotKind::frontier;
    ay.log = ax.log;
    std::vector<double> all_x;
    std::vector<double> all_y;
    for (const auto& s : series) {
        for (std::size_t m = 0; m < s.x.size() && m < s.y.size(); ++m) {
            if (ax.usable(s.x[m]) && ay.usable(s.y[m])) {
                all_x.push_back(s.x[m]);
                all_y.push_back(s.y[m]);
            }
        }
    }
    fit_axis(ax, all_x);
    fit_axis(ay, all_y);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * plot_w; };
    auto py = [&](double v) { return kTop + plot_h - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << fixed3(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape(report.title) << "</text>\n"
        << "<rect x=\"" << fixed3(kLeft) << "\" y=\"" << fixed3(kTop) << "\" width=\""
        << fixed3(plot_w) << "\" height=\"" << fixed3(plot_h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ticks(ax)) {
        const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * plot_w;
        svg << "<line x1=\"" << fixed3(x) << "\" y1=\"" << fixed3(kTop + plot_h) << "\" x2=\""
            << fixed3(x) << "\" y2=\"" << fixed3(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed3(x) << "\" y=\"" << fixed3(kTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(ax, t) << "</text>\n";
    }
    for (double t : ticks(ay)) {
        const double y = kTop + plot_h - (t - ay.lo) / (ay.hi - ay.lo) * plot_h;
        svg << "<line x1=\"" << fixed3(kLeft - 5) << "\" y1=\"" << fixed3(y) << "\" x2=\""
            << fixed3(kLeft) << "\" y2=\"" << fixed3(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed3(kLeft - 8) << "\" y=\"" << fixed3(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(ay, t) << "</text>\n";
    }
    svg << "<text x=\"" << fixed3(kLeft + plot_w / 2) << "\" y=\"" << fixed3(kHeight - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(report.x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << fixed3(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
        << fixed3(kTop + plot_h / 2) << ")\">" << escape(report.y_label) << "</text>\n";

    std::size_t colour = 0;
    for (const auto& s : series) {
        const char* stroke = kPalette[colour % std::size(kPalette)];
        if (s.markers) {
            svg << "<g fill=\"" << stroke << "\">\n";
            for (std::size_t m = 0; m < s.x.size() && m < s.y.size(); ++m) {
                if (ax.usable(s.x[m]) && ay.usable(s.y[m])) {
                    svg << "<circle cx=\"" << fixed3(px(s.x[m])) << "\" cy=\"" << fixed3(py(s.y[m]))
                        << "\" r=\"2\"/>\n";
                }
            }
            svg << "</g>\n";
        } else {
            svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (std::size_t m = 0; m < s.x.size() && m < s.y.size(); ++m) {
                if (ax.usable(s.x[m]) && ay.usable(s.y[m])) {
                    svg << (first ? "" : " ") << fixed3(px(s.x[m])) << ',' << fixed3(py(s.y[m]));
                    first = false;
                }
            }
            svg << "\"/>\n";
        }
        const double ly = kTop + 12 + 18.0 * static_cast<double>(colour);
        const double lx = kWidth - kRight + 12;
        svg << "<rect x=\"" << fixed3(lx) << "\" y=\"" << fixed3(ly - 8) << "\" width=\"12\" height=\"8\" fill=\""
            << stroke << "\"/>\n"
            << "<text x=\"" << fixed3(lx + 18) << "\" y=\"" << fixed3(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.name) << "</text>\n";
        ++colour;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sigaxial
