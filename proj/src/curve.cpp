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

#include "sigaxial/curve.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "sigaxial/errors.hpp"
#include "sigaxial/quadrature.hpp"

namespace sigaxial {

Curve::Curve(int dimension, int axial_index, double axial_speed, ComponentFn component,
             std::vector<double> breakpoints, std::vector<double> singular_points,
             std::optional<HolderInfo> holder)
    : dimension_(dimension),
      axial_index_(axial_index),
      axial_speed_(axial_speed),
      component_(std::move(component)),
      breakpoints_(std::move(breakpoints)),
      singular_points_(std::move(singular_points)),
      holder_(holder) {
    if (dimension_ < 2) {
        throw ConfigError("curve dimension must be at least 2");
    }
    if (axial_index_ < 1 || axial_index_ > dimension_) {
        throw ConfigError("axial index " + std::to_string(axial_index_) + " outside 1.." +
                          std::to_string(dimension_));
    }
    if (!(axial_speed_ > 0.0) || !std::isfinite(axial_speed_)) {
        throw ConfigError("axial speed C0 must be positive and finite");
    }
    if (!component_) {
        throw ConfigError("curve needs a derivative evaluator");
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    std::sort(singular_points_.begin(), singular_points_.end());
}

double Curve::derivative(int j, double s) const {
    if (j == axial_index_) {
        return axial_speed_;
    }
    if (j < 1 || j > dimension_) {
        throw ConfigError("component " + std::to_string(j) + " outside 1.." +
                          std::to_string(dimension_));
    }
    return component_(j, s);
}

std::vector<double> Curve::derivative(double s) const {
    std::vector<double> out(static_cast<std::size_t>(dimension_));
    for (int j = 1; j <= dimension_; ++j) {
        out[static_cast<std::size_t>(j - 1)] = derivative(j, s);
    }
    return out;
}

Curve Curve::with_source_domain(double a, double b) const {
    Curve copy = *this;
    copy.source_domain_ = {a, b};
    return copy;
}

namespace {

double number_param(const nlohmann::json& params, const char* key, double fallback) {
    if (!params.contains(key)) {
        return fallback;
    }
    const auto& value = params.at(key);
    if (!value.is_number()) {
        throw ConfigError(std::string("preset parameter '") + key + "' must be a number");
    }
    double v = value.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(std::string("preset parameter '") + key + "' must be finite");
    }
    return v;
}

int integer_param(const nlohmann::json& params, const char* key, int fallback) {
    double v = number_param(params, key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError(std::string("preset parameter '") + key + "' must be an integer");
    }
    return static_cast<int>(v);
}

void reject_unknown(const nlohmann::json& params, std::initializer_list<const char*> allowed) {
    if (!params.is_object()) {
        throw ConfigError("preset parameters must be a key-value object");
    }
    for (const auto& item : params.items()) {
        if (item.key() == "preset" || item.key() == "c0" || item.key() == "scale") {
            continue;
        }
        bool known = std::any_of(allowed.begin(), allowed.end(),
                                 [&](const char* name) { return item.key() == name; });
        if (!known) {
            throw ConfigError("unknown parameter '" + item.key() + "' for this preset");
        }
    }
}

}  // namespace

Curve make_preset(std::string_view name, const nlohmann::json& params) {
    const double c0 = number_param(params, "c0", 1.0);
    const double scale = number_param(params, "scale", 1.0);
    if (!(c0 > 0.0)) {
        throw ConfigError("c0 must be positive");
    }

    if (name == "linear") {
        reject_unknown(params, {"slope", "d"});
        const double slope = scale * number_param(params, "slope", 1.0);
        const int d = integer_param(params, "d", 2);
        if (d < 2) {
            throw ConfigError("linear preset needs d >= 2");
        }
        return Curve(d, 1, c0, [slope](int, double) { return slope; }, {}, {},
                     HolderInfo{1.0, 0.0});
    }
    if (name == "monomial") {
        reject_unknown(params, {"m"});
        const double m = number_param(params, "m", 1.0);
        if (m < 0.0) {
            throw ConfigError("monomial exponent m must be nonnegative");
        }
        HolderInfo holder = m >= 1.0 ? HolderInfo{1.0, std::abs(scale) * m}
                            : m > 0.0 ? HolderInfo{m, std::abs(scale)}
                                      : HolderInfo{1.0, 0.0};
        return Curve(2, 1, c0, [m, scale](int, double s) { return scale * std::pow(s, m); }, {},
                     {}, holder);
    }
    if (name == "sine") {
        reject_unknown(params, {"freq", "amp"});
        const double freq = number_param(params, "freq", 1.0);
        const double amp = scale * number_param(params, "amp", 1.0);
        const double omega = 2.0 * std::numbers::pi * freq;
        return Curve(2, 1, c0, [amp, omega](int, double s) { return amp * std::cos(omega * s); },
                     {}, {}, HolderInfo{1.0, std::abs(amp * omega)});
    }
    if (name == "helix") {
        reject_unknown(params, {"n"});
        const int n = integer_param(params, "n", 1);
        if (n < 1) {
            throw ConfigError("helix frequency n must be a positive integer");
        }
        const double omega = 2.0 * std::numbers::pi * n;
        return Curve(
            3, 1, c0,
            [omega, scale](int j, double s) {
                return j == 2 ? -scale * std::sin(omega * s) : scale * std::cos(omega * s);
            },
            {}, {}, HolderInfo{1.0, std::abs(scale) * omega});
    }
    if (name == "holder_kink") {
        reject_unknown(params, {"alpha", "x0"});
        if (!params.contains("alpha")) {
            throw ConfigError("holder_kink needs alpha");
        }
        const double alpha = number_param(params, "alpha", 1.0);
        const double x0 = number_param(params, "x0", 0.5);
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw ConfigError("holder_kink alpha must lie in (0, 1]");
        }
        if (x0 < 0.0 || x0 > 1.0) {
            throw ConfigError("holder_kink x0 must lie in [0, 1]");
        }
        std::vector<double> singular;
        if (x0 > 0.0 && x0 < 1.0) {
            singular.push_back(x0);
        }
        return Curve(
            2, 1, c0,
            [alpha, x0, scale](int, double s) { return scale * std::pow(std::abs(s - x0), alpha); },
            {}, std::move(singular), HolderInfo{alpha, std::abs(scale)});
    }
    if (name == "polynomial") {
        reject_unknown(params, {"coeffs"});
        if (!params.contains("coeffs") || !params.at("coeffs").is_array() ||
            params.at("coeffs").empty()) {
            throw ConfigError("polynomial preset needs a nonempty coeffs array");
        }
        std::vector<double> coeffs;
        for (const auto& c : params.at("coeffs")) {
            if (!c.is_number() || !std::isfinite(c.get<double>())) {
                throw ConfigError("polynomial coefficients must be finite numbers");
            }
            coeffs.push_back(scale * c.get<double>());
        }
        double lipschitz = 0.0;
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            lipschitz += static_cast<double>(k) * std::abs(coeffs[k]);
        }
        return Curve(
            2, 1, c0,
            [coeffs](int, double s) {
                double acc = 0.0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                    acc = acc * s + *it;
                }
                return acc;
            },
            {}, {}, HolderInfo{1.0, lipschitz});
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

Curve curve_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("preset") || !spec.at("preset").is_string()) {
        throw ConfigError("curve description needs a \"preset\" string");
    }
    return make_preset(spec.at("preset").get<std::string>(), spec);
}

Curve linear_combination(double lambda_a, const Curve& a, double lambda_b, const Curve& b) {
    if (a.dimension() != b.dimension() || a.axial_index() != b.axial_index() ||
        a.axial_speed() != b.axial_speed()) {
        throw ConfigError("linear combination needs curves in the same axial class");
    }
    std::vector<double> breaks(a.breakpoints().begin(), a.breakpoints().end());
    breaks.insert(breaks.end(), b.breakpoints().begin(), b.breakpoints().end());
    std::vector<double> singular(a.singular_points().begin(), a.singular_points().end());
    singular.insert(singular.end(), b.singular_points().begin(), b.singular_points().end());
    std::optional<HolderInfo> holder;
    if (a.holder() && b.holder()) {
        const double alpha = std::min(a.holder()->alpha, b.holder()->alpha);
        // a smaller exponent keeps the bound valid on [0,1] since |s-t| <= 1
        holder = HolderInfo{alpha, std::abs(lambda_a) * a.holder()->bound +
                                       std::abs(lambda_b) * b.holder()->bound};
    }
    return Curve(
        a.dimension(), a.axial_index(), a.axial_speed(),
        [lambda_a, a, lambda_b, b](int j, double s) {
            return lambda_a * a.derivative(j, s) + lambda_b * b.derivative(j, s);
        },
        std::move(breaks), std::move(singular), holder);
}

namespace {

void validate_polyline(const Polyline& samples) {
    if (samples.dimension < 2) {
        throw ConfigError("polyline dimension must be at least 2");
    }
    if (samples.vertices.size() < 2) {
        throw ConfigError("polyline needs at least two vertices");
    }
    if (samples.grid.size() != samples.vertices.size()) {
        throw ConfigError("polyline grid and vertex counts differ");
    }
    for (const auto& v : samples.vertices) {
        if (static_cast<int>(v.size()) != samples.dimension) {
            throw ConfigError("polyline vertex has wrong dimension");
        }
    }
    for (std::size_t m = 1; m < samples.grid.size(); ++m) {
        if (!(samples.grid[m] > samples.grid[m - 1])) {
            throw ConfigError("polyline grid must be strictly increasing");
        }
    }
}

}  // namespace

Curve reparameterize_to_axial_linear(const Polyline& samples, int axial_index) {
    validate_polyline(samples);
    if (axial_index < 1 || axial_index > samples.dimension) {
        throw ConfigError("axial index outside the polyline dimension");
    }
    const auto axial = static_cast<std::size_t>(axial_index - 1);
    const std::size_t count = samples.vertices.size();
    for (std::size_t m = 1; m < count; ++m) {
        if (!(samples.vertices[m][axial] > samples.vertices[m - 1][axial])) {
            throw ConfigError("axial component not strictly increasing at vertex " +
                              std::to_string(m));
        }
    }
    const double start = samples.vertices.front()[axial];
    const double c0 = samples.vertices.back()[axial] - start;

    auto knots = std::make_shared<std::vector<double>>(count);
    for (std::size_t m = 0; m < count; ++m) {
        (*knots)[m] = (samples.vertices[m][axial] - start) / c0;
    }
    knots->back() = 1.0;

    // slopes[(j-1) * segments + m] = d x_j / d s on segment m
    const std::size_t segments = count - 1;
    auto slopes = std::make_shared<std::vector<double>>(segments * samples.vertices[0].size());
    for (std::size_t j = 0; j < static_cast<std::size_t>(samples.dimension); ++j) {
        for (std::size_t m = 0; m < segments; ++m) {
            (*slopes)[j * segments + m] = (samples.vertices[m + 1][j] - samples.vertices[m][j]) /
                                          ((*knots)[m + 1] - (*knots)[m]);
        }
    }

    std::vector<double> breaks(knots->begin() + 1, knots->end() - 1);
    Curve curve(
        samples.dimension, axial_index, c0,
        [knots, slopes, segments](int j, double s) {
            auto it = std::upper_bound(knots->begin(), knots->end(), s);
            std::size_t m = it == knots->begin() ? 0
                                                 : static_cast<std::size_t>(it - knots->begin()) - 1;
            m = std::min(m, segments - 1);
            return (*slopes)[static_cast<std::size_t>(j - 1) * segments + m];
        },
        std::move(breaks));
    return curve.with_source_domain(samples.grid.front(), samples.grid.back());
}

Polyline sample_polyline(const Curve& curve, int vertex_count) {
    if (vertex_count < 2) {
        throw ConfigError("polyline sampling needs at least two vertices");
    }
    const int d = curve.dimension();
    Polyline out;
    out.dimension = d;
    out.grid.resize(static_cast<std::size_t>(vertex_count));
    out.vertices.assign(static_cast<std::size_t>(vertex_count),
                        std::vector<double>(static_cast<std::size_t>(d), 0.0));

    std::vector<double> special(curve.breakpoints().begin(), curve.breakpoints().end());
    std::vector<double> singular(curve.singular_points().begin(), curve.singular_points().end());
    std::vector<double> cuts;
    for (int m = 0; m < vertex_count; ++m) {
        out.grid[static_cast<std::size_t>(m)] = static_cast<double>(m) / (vertex_count - 1);
    }
    for (int m = 0; m + 1 < vertex_count; ++m) {
        const double a = out.grid[static_cast<std::size_t>(m)];
        const double b = out.grid[static_cast<std::size_t>(m + 1)];
        cuts.assign({a, b});
        bool graded = false;
        for (double p : special) {
            if (p > a && p < b) {
                cuts.push_back(p);
            }
        }
        for (double p : singular) {
            if (p > a && p < b) {
                cuts.push_back(p);
                append_graded_cuts(cuts, a, p, p, 16);
                append_graded_cuts(cuts, p, b, p, 16);
                graded = true;
            } else if (p == a || p == b) {
                append_graded_cuts(cuts, a, b, p, 16);
                graded = true;
            }
        }
        std::sort(cuts.begin(), cuts.end());
        const auto& prev = out.vertices[static_cast<std::size_t>(m)];
        auto& next = out.vertices[static_cast<std::size_t>(m + 1)];
        for (int j = 1; j <= d; ++j) {
            const auto slot = static_cast<std::size_t>(j - 1);
            if (j == curve.axial_index()) {
                next[slot] = curve.axial_speed() * b;
                continue;
            }
            next[slot] = prev[slot] + integrate_panels(
                                          [&](double s) { return curve.derivative(j, s); },
                                          cuts, graded ? 20 : 10);
        }
    }
    return out;
}

DerivativeNorms sup_norm_and_holder(const Curve& curve, double alpha, int grid_size) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ConfigError("Hoelder exponent must lie in (0, 1]");
    }
    if (grid_size < 2) {
        throw ConfigError("grid size must be at least 2");
    }
    const auto d = static_cast<std::size_t>(curve.dimension());
    const auto count = static_cast<std::size_t>(grid_size);
    std::vector<double> grid(count);
    std::vector<double> values(count * d);
    DerivativeNorms norms;
    for (std::size_t m = 0; m < count; ++m) {
        grid[m] = static_cast<double>(m) / (grid_size - 1);
        double sq = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double v = curve.derivative(static_cast<int>(j + 1), grid[m]);
            values[m * d + j] = v;
            sq += v * v;
        }
        norms.sup = std::max(norms.sup, std::sqrt(sq));
    }
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            double sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                double diff = values[b * d + j] - values[a * d + j];
                sq += diff * diff;
            }
            if (sq == 0.0) {
                continue;
            }
            double ratio = std::sqrt(sq) / std::pow(grid[b] - grid[a], alpha);
            norms.holder = std::max(norms.holder, ratio);
        }
    }
    return norms;
}

Polyline read_polyline_csv(std::istream& in) {
    std::string line;
    do {
        if (!std::getline(in, line)) {
            throw ConfigError("polyline CSV is empty");
        }
    } while (line.empty() || line[0] == '#');

    std::vector<std::string> header;
    {
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            header.push_back(cell);
        }
    }
    if (header.size() < 3 || header[0] != "s") {
        throw ConfigError("polyline CSV header must be s,x1,...,xd with d >= 2");
    }
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j] != "x" + std::to_string(j)) {
            throw ConfigError("polyline CSV header column " + std::to_string(j) + " must be x" +
                              std::to_string(j));
        }
    }

    Polyline out;
    out.dimension = static_cast<int>(header.size()) - 1;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::stringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(cell, &used));
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::exception&) {
                throw ConfigError("polyline CSV line " + std::to_string(line_no) +
                                  ": not a number: '" + cell + "'");
            }
        }
        if (values.size() != header.size()) {
            throw ConfigError("polyline CSV line " + std::to_string(line_no) +
                              " has the wrong column count");
        }
        out.grid.push_back(values[0]);
        out.vertices.emplace_back(values.begin() + 1, values.end());
    }
    validate_polyline(out);
    if (out.grid.front() != 0.0 || out.grid.back() != 1.0) {
        throw ConfigError("polyline parameter grid must start at 0 and end at 1");
    }
    return out;
}

void write_polyline_csv(std::ostream& out, const Polyline& polyline) {
    out << "s";
    for (int j = 1; j <= polyline.dimension; ++j) {
        out << ",x" << j;
    }
    out << '\n';
    std::ostringstream cell;
    cell << std::setprecision(17);
    for (std::size_t m = 0; m < polyline.size(); ++m) {
        cell.str("");
        cell << polyline.grid[m];
        for (double v : polyline.vertices[m]) {
            cell << ',' << v;
        }
        out << cell.str() << '\n';
    }
}

}  // namespace sigaxial
