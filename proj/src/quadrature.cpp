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

#include "sigaxial/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "sigaxial/errors.hpp"

namespace sigaxial {

namespace {

// Newton iteration on P_n from the Chebyshev-like initial guess.
GaussLegendreRule build_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            double step = p1 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        // recompute the derivative at the converged node
        double p1 = 1.0;
        double p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int points) {
    if (points < 1) {
        throw ConfigError("Gauss-Legendre rule needs at least one point");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[points];
    if (!slot) {
        slot = std::make_unique<GaussLegendreRule>(build_rule(points));
    }
    return *slot;
}

void append_graded_cuts(std::vector<double>& cuts, double a, double b, double singular,
                        int levels, double ratio) {
    // cuts receives the interior points only; the caller owns a and b.
    const double width = b - a;
    if (singular == a) {
        double offset = width;
        std::vector<double> inner;
        for (int m = 0; m < levels; ++m) {
            offset *= ratio;
            inner.push_back(a + offset);
        }
        cuts.insert(cuts.end(), inner.rbegin(), inner.rend());
    } else {
        double offset = width;
        for (int m = 0; m < levels; ++m) {
            offset *= ratio;
            cuts.push_back(b - offset);
        }
    }
}

}  // namespace sigaxial
