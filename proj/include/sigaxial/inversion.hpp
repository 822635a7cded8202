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

#include <cstdint>
#include <span>
#include <vector>

#include "sigaxial/curve.hpp"
#include "sigaxial/rational.hpp"
#include "sigaxial/signature.hpp"

namespace sigaxial {

struct RecoveryStep {
    std::int64_t n = 0;  // position in the approximation sequence, 1-based
    std::int64_t p = 0;
    std::int64_t q = 0;
    double estimate = 0.0;
};

struct RecoverySequence {
    double x = 0.0;
    SchemeKind scheme = SchemeKind::naive;
    std::vector<RecoveryStep> steps;
    double final_estimate = 0.0;  // last step
    double stagnation = 0.0;      // max |difference| among the last three estimates
    bool truncated = false;       // the scheme wanted denominators beyond the table
};

/// Recovers x_j'(x) of the axial-linear parameterization. Each estimate is the scaled
/// cell at (p, q - p), i.e. (q+1)! S_{p,q-p} / C0^q, read without further arithmetic.
/// Pairs with q > table truncation are dropped and the sequence is flagged truncated.
RecoverySequence recover_derivative_at(const CoeffTable& table, int j, const RationalScheme& scheme,
                                       std::int64_t n_max);

// Same cells divided by C0: the parameterization-free ratio x_j'/x_i'.
RecoverySequence recover_ratio(const CoeffTable& table, int j, const RationalScheme& scheme,
                               std::int64_t n_max);

struct ProfilePoint {
    double s = 0.0;
    double value = 0.0;
};

// Level-(n+1) cross-section {(k/n, Sh_{k,n-k})}, k = 0..n. Requires 1 <= n <= N.
std::vector<ProfilePoint> recover_profile(const CoeffTable& table, int j, int n);

/// (1/(n+1)) sum_{k=1}^n sqrt(C0^2 + sum_{j != i} Sh_{k,n-k}^2), which equals
/// sum_{k=1}^n sqrt(sum_j S_{k,n-k}^2) n!/C0^n with the analytic axial cells. The k = 0
/// term is left out, which biases the estimate by O(1/n).
double recover_length(const CoeffTable& table, int n);

/// Integrates recovered derivative profiles (one per non-axial component, all on the
/// same uniform grid) by the cumulative trapezoid rule from the origin. The axial
/// coordinate is rebuilt as C0 s.
Polyline reconstruct_trace(std::span<const std::vector<ProfilePoint>> profiles, double axial_speed,
                           int axial_index);
Polyline reconstruct_trace(const std::vector<ProfilePoint>& profile, double axial_speed);

}  // namespace sigaxial
