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

#include <span>
#include <vector>

namespace sigaxial {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached per n; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int points);

// Composite rule: one n-point panel per consecutive pair of `cuts`.
template <class F>
double integrate_panels(const F& f, std::span<const double> cuts, int points) {
    const GaussLegendreRule& rule = gauss_legendre(points);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double half = 0.5 * (cuts[p + 1] - cuts[p]);
        if (half <= 0.0) {
            continue;
        }
        const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
        double panel = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            panel += rule.weights[q] * f(mid + half * rule.nodes[q]);
        }
        total += half * panel;
    }
    return total;
}

template <class F>
double integrate(const F& f, double a, double b, int points, int panels = 1) {
    std::vector<double> cuts(static_cast<std::size_t>(panels) + 1);
    for (int p = 0; p <= panels; ++p) {
        cuts[static_cast<std::size_t>(p)] = a + (b - a) * p / panels;
    }
    cuts.back() = b;
    return integrate_panels(f, cuts, points);
}

// Inserts cut points geometrically graded toward `singular` inside [a, b] (one of the
// endpoints), giving exponential convergence for |s - singular|^alpha integrands.
void append_graded_cuts(std::vector<double>& cuts, double a, double b, double singular,
                        int levels, double ratio = 0.15);

}  // namespace sigaxial
