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

// Index (k, l) of the Beta(k+1, l+1) kernel rho_{k,l}(s) = (n+1)!/(k! l!) s^k (1-s)^l.
struct KernelIndex {
    int k = 0;
    int l = 0;

    KernelIndex() = default;
    KernelIndex(int k_, int l_);

    int n() const noexcept { return k + l; }
};

// log of (n+1)!/(k! l!), the normalizing constant.
double log_rho_constant(KernelIndex idx);

// log rho_{k,l}(s) using 0 * log 0 = 0; -infinity where a positive power of 0 appears.
// Throws ConfigError for s outside [0,1].
double log_rho(KernelIndex idx, double s);

// Same as log_rho with the constant and logs precomputed; no range checking.
inline double log_rho_fast(double log_constant, int k, int l, double log_s, double log_1ms) {
    double value = log_constant;
    if (k > 0) {
        value += k * log_s;
    }
    if (l > 0) {
        value += l * log_1ms;
    }
    return value;
}

// k / n, where rho_{k,l} peaks. Throws ConfigError when n == 0.
double rho_mode(KernelIndex idx);

// Standard deviation of Beta(k+1, l+1).
double rho_stddev(KernelIndex idx);

// 3 n^{3/2} exp(-n^{2 eps0} / 18). Throws ConfigError unless n >= 1 and eps0 in (0, 1/2).
double fast_decay_envelope(long n, double eps0);

struct FastDecayRow {
    long n = 0;
    double eps0 = 0.0;
    double worst_ratio = 0.0;  // max rho / envelope over the excluded region
    long violations = 0;       // (k, s) pairs with rho > envelope
};

struct FastDecayReport {
    std::vector<FastDecayRow> rows;
    // Smallest n in the sweep from which every later row has zero violations; -1 when the
    // last row still violates.
    long empirical_n0 = -1;
};

// Sweeps every k <= n and a uniform grid of `grid_points` values of s in [0,1],
// restricted to |s - k/n| >= n^{-1/2 + eps0}.
FastDecayReport check_fast_decay(std::span<const long> n_values, double eps0, int grid_points);

// Violation pattern of one (k, l) pair on the grid, for mirror-symmetry checks.
std::vector<bool> fast_decay_violations(KernelIndex idx, double eps0, int grid_points);

struct ModeBoundReport {
    long threshold = 0;      // every n > threshold satisfies the bound (within the sweep)
    double worst_ratio = 0;  // max rho(k/n) / (3 n^{3/2}) over the sweep
};

// Checks rho_{k,l}(k/n) < 3 n^{3/2} for every k + l = n, 1 <= n <= n_max.
ModeBoundReport check_mode_bound(long n_max);

}  // namespace sigaxial
