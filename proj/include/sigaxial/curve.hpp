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

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sigaxial {

// Hoelder regularity of the derivative: |g'(s) - g'(t)| <= bound * |s - t|^alpha.
struct HolderInfo {
    double alpha = 1.0;
    double bound = 0.0;
};

/// A C^1 curve on [0,1] presented by its derivative, with one axial-linear coordinate
/// x_i(s) = C0 * s. Components are 1-based to match the usual e_1..e_d notation.
///
/// The axial component of the derivative is always returned as exactly C0; the
/// evaluator passed at construction is only consulted for the other components.
/// Curves are immutable and safe to evaluate concurrently.
class Curve {
public:
    // Evaluates x_j'(s) for a non-axial component j (1-based).
    using ComponentFn = std::function<double(int j, double s)>;

    Curve(int dimension, int axial_index, double axial_speed, ComponentFn component,
          std::vector<double> breakpoints = {}, std::vector<double> singular_points = {},
          std::optional<HolderInfo> holder = std::nullopt);

    int dimension() const noexcept { return dimension_; }
    int axial_index() const noexcept { return axial_index_; }
    double axial_speed() const noexcept { return axial_speed_; }

    double derivative(int j, double s) const;
    std::vector<double> derivative(double s) const;

    // Points where the derivative jumps (piecewise-smooth integrands split there).
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    // Points where the derivative is continuous but not smooth (|s - x0|^alpha kinks).
    std::span<const double> singular_points() const noexcept { return singular_points_; }
    const std::optional<HolderInfo>& holder() const noexcept { return holder_; }

    // Parameter interval of the source curve before normalization to [0,1].
    std::pair<double, double> source_domain() const noexcept { return source_domain_; }
    Curve with_source_domain(double a, double b) const;

private:
    int dimension_;
    int axial_index_;
    double axial_speed_;
    ComponentFn component_;
    std::vector<double> breakpoints_;
    std::vector<double> singular_points_;
    std::optional<HolderInfo> holder_;
    std::pair<double, double> source_domain_{0.0, 1.0};
};

// Sampled curve: vertices[m] is the point at parameter grid[m].
struct Polyline {
    int dimension = 0;
    std::vector<double> grid;
    std::vector<std::vector<double>> vertices;

    std::size_t size() const noexcept { return vertices.size(); }
};

/// Builds one of the analytic presets. Parameters (all optional unless noted):
///   linear      slope (1), d (2)                   x_j' = slope
///   monomial    m (1)                              y' = s^m
///   sine        freq (1), amp (1)                  y' = amp cos(2 pi freq s)
///   helix       n (1)                              (1, -sin(2 n pi s), cos(2 n pi s)), d = 3
///   holder_kink alpha (required), x0 (0.5)         y' = |s - x0|^alpha
///   polynomial  coeffs (required, ascending)       y' = sum c_k s^k
/// Every preset also accepts c0 (axial speed, default 1) and scale (multiplies every
/// non-axial component, default 1). Throws ConfigError on unknown names or bad values.
Curve make_preset(std::string_view name, const nlohmann::json& params = nlohmann::json::object());

// {"preset": "helix", "n": 3} style description.
Curve curve_from_json(const nlohmann::json& spec);

// Non-axial components combined as lambda_a * a + lambda_b * b; the axial coordinate is
// shared. Both curves must have the same dimension, axial index and axial speed.
Curve linear_combination(double lambda_a, const Curve& a, double lambda_b, const Curve& b);

/// Re-times a polyline whose axial component is strictly increasing so that the axial
/// coordinate becomes linear on [0,1]. The other components are piecewise linear in the
/// new parameter; their derivative is piecewise constant with breakpoints at the vertices.
Curve reparameterize_to_axial_linear(const Polyline& samples, int axial_index);

// Samples position (by exact integration for piecewise data, cumulative quadrature
// otherwise) on a uniform grid of `vertex_count` points starting at the origin.
Polyline sample_polyline(const Curve& curve, int vertex_count);

// Lower-bound estimates of sup |g'| and the alpha-Hoelder seminorm of g' over a uniform
// grid, maximizing over every pair of grid points.
struct DerivativeNorms {
    double sup = 0.0;
    double holder = 0.0;
};
DerivativeNorms sup_norm_and_holder(const Curve& curve, double alpha, int grid_size);

Polyline read_polyline_csv(std::istream& in);
void write_polyline_csv(std::ostream& out, const Polyline& polyline);

}  // namespace sigaxial
