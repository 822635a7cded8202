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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sigaxial/report.hpp"
#include "sigaxial/signature.hpp"

namespace sigaxial {

/// Everything a single `sig` invocation needs. Fields left unset fall back to
/// per-command defaults inside the runners.
struct ExperimentConfig {
    std::string command;
    nlohmann::json curve;    // {"preset": ..., params...}; null when absent
    nlohmann::json curve_b;  // second curve for norms
    std::string table_path;
    std::string polyline_path;
    std::string out_path;
    std::string plot_path;

    std::optional<int> truncation;  // N
    std::optional<long> nmax;
    std::optional<double> x;
    std::optional<int> j;
    std::string scheme = "naive";
    double eps0 = 0.1;
    std::optional<double> alpha;
    std::uint64_t seed = 1;
    std::optional<int> n;
    std::string norm = "as";
    std::vector<int> m_list;
    std::vector<long> n_list;
    int grid = 10000;
    double slack = 0.15;
    int vertices = 10000;
    int levels = 8;
    double tolerance = 1e-6;
    bool raw = false;

    std::vector<double> epsilons;
    std::vector<double> lambdas;
    int lambda_count = 12;
    double c1bar = 1.0;
    double c2bar = 1.0;
    double ball_radius = 10.0;

    QuadConfig quad;
};

// Overlays keys from a JSON run manifest onto cfg. Unknown keys are rejected.
void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& manifest);

// Stable key=value list of the settings that affect results (no output paths).
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);

ExperimentReport run_rate_experiment(const ExperimentConfig& cfg);
ExperimentReport run_invert(const ExperimentConfig& cfg);
ExperimentReport run_trace(const ExperimentConfig& cfg);
ExperimentReport run_length(const ExperimentConfig& cfg);
ExperimentReport run_norms(const ExperimentConfig& cfg);
ExperimentReport run_discont(const ExperimentConfig& cfg);
ExperimentReport run_modcont(const ExperimentConfig& cfg);
ExperimentReport run_fastdecay(const ExperimentConfig& cfg);
ExperimentReport run_crosscheck(const ExperimentConfig& cfg);

// Dispatches on cfg.command (everything except `table`).
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Log-uniform draws in [lo, hi] from a seeded 64-bit Mersenne twister; identical on every
// platform because the mapping to doubles is done here rather than by a distribution.
std::vector<double> log_uniform_draws(std::uint64_t seed, int count, double lo, double hi);

// True when the named preset takes `key` as a parameter (c0 and scale always apply).
bool preset_accepts(const std::string& preset, const std::string& key);

/// The `sig` command line. Returns 0 on success, 1 on configuration or I/O errors and
/// 2 on numerical failures.
int run_cli(int argc, const char* const* argv);

}  // namespace sigaxial
