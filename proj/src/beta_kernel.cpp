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

#include "sigaxial/beta_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sigaxial/errors.hpp"
#include "sigaxial/parallel.hpp"

namespace sigaxial {

KernelIndex::KernelIndex(int k_, int l_) : k(k_), l(l_) {
    if (k < 0 || l < 0) {
        throw ConfigError("kernel index (k, l) must be nonnegative");
    }
}

double log_rho_constant(KernelIndex idx) {
    return std::lgamma(idx.n() + 2.0) - std::lgamma(idx.k + 1.0) - std::lgamma(idx.l + 1.0);
}

double log_rho(KernelIndex idx, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw ConfigError("kernel argument s must lie in [0, 1]");
    }
    constexpr double minus_inf = -std::numeric_limits<double>::infinity();
    if ((s == 0.0 && idx.k > 0) || (s == 1.0 && idx.l > 0)) {
        return minus_inf;
    }
    double value = log_rho_constant(idx);
    if (idx.k > 0) {
        value += idx.k * std::log(s);
    }
    if (idx.l > 0) {
        value += idx.l * std::log1p(-s);
    }
    return value;
}

double rho_mode(KernelIndex idx) {
    if (idx.n() == 0) {
        throw ConfigError("the uniform kernel (k = l = 0) has no unique mode");
    }
    return static_cast<double>(idx.k) / idx.n();
}

double rho_stddev(KernelIndex idx) {
    const double a = idx.k + 1.0;
    const double b = idx.l + 1.0;
    return std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0)));
}

double fast_decay_envelope(long n, double eps0) {
    if (n < 1) {
        throw ConfigError("fast-decay envelope needs n >= 1");
    }
    if (!(eps0 > 0.0 && eps0 < 0.5)) {
        throw ConfigError("eps0 must lie in (0, 1/2)");
    }
    const double nd = static_cast<double>(n);
    return 3.0 * std::pow(nd, 1.5) * std::exp(-std::pow(nd, 2.0 * eps0) / 18.0);
}

namespace {

struct Grid {
    std::vector<double> s;
    std::vector<double> log_s;
    std::vector<double> log_1ms;
};

Grid make_grid(int points) {
    if (points < 2) {
        throw ConfigError("s-grid needs at least two points");
    }
    Grid g;
    const auto count = static_cast<std::size_t>(points);
    g.s.resize(count);
    g.log_s.resize(count);
    g.log_1ms.resize(count);
    for (std::size_t m = 0; m < count; ++m) {
        double s = static_cast<double>(m) / (points - 1);
        g.s[m] = s;
        g.log_s[m] = std::log(s);
        g.log_1ms[m] = std::log1p(-s);
    }
    return g;
}

// log rho on a grid point, with the endpoint conventions.
double grid_log_rho(double log_constant, int k, int l, const Grid& g, std::size_t m) {
    if ((g.s[m] == 0.0 && k > 0) || (g.s[m] == 1.0 && l > 0)) {
        return -std::numeric_limits<double>::infinity();
    }
    return log_rho_fast(log_constant, k, l, g.log_s[m], g.log_1ms[m]);
}

struct KSweep {
    double worst_log_ratio = -std::numeric_limits<double>::infinity();
    long violations = 0;
};

KSweep sweep_one(int k, int l, double log_envelope, double radius, const Grid& g) {
    KSweep out;
    const double log_constant = log_rho_constant(KernelIndex(k, l));
    const double center = static_cast<double>(k) / (k + l);
    for (std::size_t m = 0; m < g.s.size(); ++m) {
        if (std::abs(g.s[m] - center) < radius) {
            continue;
        }
        double log_ratio = grid_log_rho(log_constant, k, l, g, m) - log_envelope;
        out.worst_log_ratio = std::max(out.worst_log_ratio, log_ratio);
        if (log_ratio > 0.0) {
            ++out.violations;
        }
    }
    return out;
}

}  // namespace

FastDecayReport check_fast_decay(std::span<const long> n_values, double eps0, int grid_points) {
    if (!(eps0 > 0.0 && eps0 < 0.5)) {
        throw ConfigError("eps0 must lie in (0, 1/2)");
    }
    const Grid grid = make_grid(grid_points);
    FastDecayReport report;
    report.rows.resize(n_values.size());
    for (std::size_t r = 0; r < n_values.size(); ++r) {
        const long n = n_values[r];
        if (n < 1 || n > std::numeric_limits<int>::max() / 2) {
            throw ConfigError("fast-decay sweep needs 1 <= n");
        }
        const double log_envelope = std::log(fast_decay_envelope(n, eps0));
        const double radius = std::pow(static_cast<double>(n), -0.5 + eps0);
        std::vector<KSweep> per_k(static_cast<std::size_t>(n) + 1);
        parallel_for(per_k.size(), [&](std::size_t k) {
            per_k[k] = sweep_one(static_cast<int>(k), static_cast<int>(n - static_cast<long>(k)),
                                 log_envelope, radius, grid);
        });
        FastDecayRow row;
        row.n = n;
        row.eps0 = eps0;
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& sweep : per_k) {
            worst = std::max(worst, sweep.worst_log_ratio);
            row.violations += sweep.violations;
        }
        row.worst_ratio = std::exp(worst);
        report.rows[r] = row;
    }
    report.empirical_n0 = -1;
    for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
        if (it->violations > 0) {
            break;
        }
        report.empirical_n0 = it->n;
    }
    return report;
}

std::vector<bool> fast_decay_violations(KernelIndex idx, double eps0, int grid_points) {
    const long n = idx.n();
    const Grid grid = make_grid(grid_points);
    const double log_envelope = std::log(fast_decay_envelope(n, eps0));
    const double radius = std::pow(static_cast<double>(n), -0.5 + eps0);
    const double log_constant = log_rho_constant(idx);
    const double center = rho_mode(idx);
    std::vector<bool> out(grid.s.size(), false);
    for (std::size_t m = 0; m < grid.s.size(); ++m) {
        if (std::abs(grid.s[m] - center) < radius) {
            continue;
        }
        out[m] = grid_log_rho(log_constant, idx.k, idx.l, grid, m) > log_envelope;
    }
    return out;
}

ModeBoundReport check_mode_bound(long n_max) {
    if (n_max < 1) {
        throw ConfigError("mode-bound sweep needs n_max >= 1");
    }
    ModeBoundReport report;
    report.threshold = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (long n = 1; n <= n_max; ++n) {
        const double log_bound = std::log(3.0) + 1.5 * std::log(static_cast<double>(n));
        bool violated = false;
        for (long k = 0; k <= n; ++k) {
            KernelIndex idx(static_cast<int>(k), static_cast<int>(n - k));
            double value = log_rho(idx, rho_mode(idx)) - log_bound;
            worst = std::max(worst, value);
            violated = violated || value >= 0.0;
        }
        if (violated) {
            report.threshold = n;
        }
    }
    report.worst_ratio = std::exp(worst);
    return report;
}

}  // namespace sigaxial
