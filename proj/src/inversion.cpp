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

#include "sigaxial/inversion.hpp"

#include <algorithm>
#include <cmath>

#include "sigaxial/errors.hpp"

namespace sigaxial {

namespace {

void check_component(const CoeffTable& table, int j) {
    if (j == table.axial_index()) {
        throw ConfigError("recovery needs a non-axial component j != i");
    }
    if (j < 1 || j > table.dimension()) {
        throw ConfigError("component j outside 1..d");
    }
}

RecoverySequence collect(const CoeffTable& table, int j, const RationalScheme& scheme,
                         std::int64_t n_max, double divisor) {
    check_component(table, j);
    if (n_max < 1) {
        throw ConfigError("recovery needs n_max >= 1");
    }
    RecoverySequence seq;
    seq.x = scheme.target();
    seq.scheme = scheme.kind();

    const std::vector<RationalPair> wanted = scheme.pairs(n_max);
    std::int64_t n = 0;
    for (const auto& pair : wanted) {
        ++n;
        if (pair.q > table.truncation()) {
            seq.truncated = true;
            break;
        }
        seq.steps.push_back({n, pair.p, pair.q,
                             table.at(j, static_cast<int>(pair.p), static_cast<int>(pair.q - pair.p)) /
                                 divisor});
    }
    if (seq.steps.empty()) {
        throw ConfigError("no approximation pair fits inside the table truncation");
    }
    seq.final_estimate = seq.steps.back().estimate;
    const std::size_t tail = std::min<std::size_t>(3, seq.steps.size());
    for (std::size_t m = seq.steps.size() - tail + 1; m < seq.steps.size(); ++m) {
        seq.stagnation =
            std::max(seq.stagnation, std::abs(seq.steps[m].estimate - seq.steps[m - 1].estimate));
    }
    return seq;
}

}  // namespace

RecoverySequence recover_derivative_at(const CoeffTable& table, int j, const RationalScheme& scheme,
                                       std::int64_t n_max) {
    return collect(table, j, scheme, n_max, 1.0);
}

RecoverySequence recover_ratio(const CoeffTable& table, int j, const RationalScheme& scheme,
                               std::int64_t n_max) {
    return collect(table, j, scheme, n_max, table.axial_speed());
}

std::vector<ProfilePoint> recover_profile(const CoeffTable& table, int j, int n) {
    check_component(table, j);
    if (n < 1 || n > table.truncation()) {
        throw ConfigError("profile level n must lie in 1..N");
    }
    std::vector<ProfilePoint> profile(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        profile[static_cast<std::size_t>(k)] = {static_cast<double>(k) / n, table.at(j, k, n - k)};
    }
    return profile;
}

double recover_length(const CoeffTable& table, int n) {
    if (n < 1 || n > table.truncation()) {
        throw ConfigError("length level n must lie in 1..N");
    }
    const double c0 = table.axial_speed();
    double total = 0.0;
    for (int k = 1; k <= n; ++k) {
        double sq = c0 * c0;
        for (int j = 1; j <= table.dimension(); ++j) {
            if (j != table.axial_index()) {
                const double v = table.at(j, k, n - k);
                sq += v * v;
            }
        }
        total += std::sqrt(sq);
    }
    return total / (n + 1);
}

Polyline reconstruct_trace(std::span<const std::vector<ProfilePoint>> profiles, double axial_speed,
                           int axial_index) {
    if (profiles.empty() || profiles.front().size() < 2) {
        throw ConfigError("trace reconstruction needs at least one profile with two points");
    }
    const std::size_t count = profiles.front().size();
    for (const auto& profile : profiles) {
        if (profile.size() != count) {
            throw ConfigError("trace profiles must share one grid");
        }
    }
    const int d = static_cast<int>(profiles.size()) + 1;
    if (axial_index < 1 || axial_index > d) {
        throw ConfigError("axial index outside 1..d");
    }
    Polyline out;
    out.dimension = d;
    out.grid.resize(count);
    out.vertices.assign(count, std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (std::size_t m = 0; m < count; ++m) {
        out.grid[m] = profiles.front()[m].s;
    }
    const auto axial = static_cast<std::size_t>(axial_index - 1);
    for (std::size_t m = 0; m < count; ++m) {
        out.vertices[m][axial] = axial_speed * out.grid[m];
    }
    std::size_t slot = 0;
    for (const auto& profile : profiles) {
        if (slot == axial) {
            ++slot;
        }
        for (std::size_t m = 1; m < count; ++m) {
            const double h = profile[m].s - profile[m - 1].s;
            out.vertices[m][slot] =
                out.vertices[m - 1][slot] + 0.5 * h * (profile[m].value + profile[m - 1].value);
        }
        ++slot;
    }
    return out;
}

Polyline reconstruct_trace(const std::vector<ProfilePoint>& profile, double axial_speed) {
    return reconstruct_trace(std::span<const std::vector<ProfilePoint>>(&profile, 1), axial_speed, 1);
}

}  // namespace sigaxial
