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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sigaxial {

enum class PlotKind { loglog, profile, frontier };

// Data for the SVG only; never written to CSV.
struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;  // scatter instead of polyline
};

/// Row-oriented experiment output. Everything except wall_seconds is deterministic for a
/// fixed configuration, and the summary is a function of the rows.
struct ExperimentReport {
    std::string title;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<PlotSeries> series;
    std::string x_label;
    std::string y_label;
    PlotKind plot_kind = PlotKind::profile;
    double wall_seconds = 0.0;

    std::optional<double> summary_value(const std::string& key) const;
    std::vector<double> column(const std::string& name) const;
};

// Shortest round-trip form; integers without a decimal point; nan/inf spelled out.
std::string format_number(double value);

// '#'-prefixed config echo and summary lines, then the header row and data rows.
void write_csv(std::ostream& out, const ExperimentReport& report);

/// Self-contained SVG with axes, ticks, a legend and every series in the report.
/// Coordinates carry three decimals, so the bytes depend only on the report.
/// Throws ConfigError when the report has no rows and no series.
std::string emit_svg_plot(const ExperimentReport& report, PlotKind kind);

}  // namespace sigaxial
