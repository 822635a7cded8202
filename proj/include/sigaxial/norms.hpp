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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigaxial/curve.hpp"
#include "sigaxial/signature.hpp"

namespace sigaxial {

enum class NormKind { as, al1 };

struct NormPoint {
    int n = 0;
    double value = 0.0;
    int argmax_k = -1;  // AS only: smallest k attaining the sup
};

/// Finite-n surrogate of an asymptotic seminorm: the sequence itself plus the last
/// value and the log-log trend of |value_n - reference| over the tail half.
struct NormSequence {
    NormKind kind = NormKind::as;
    std::vector<NormPoint> values;
    std::optional<double> reference;
    double trend_slope = 0.0;  // NaN when there is no reference or the fit is degenerate

    double last() const { return values.empty() ? 0.0 : values.back().value; }
};

/// Euclidean norm over j != i of the raw coefficient S^{(j;i)}_{k,l} (of a, or of a - b),
/// as a sign/log pair. Two tables must share (d, i, N) and both have C0 = 1.
SignedLog seminorm_kl(const CoeffTable& a, const CoeffTable* b, int k, int l);

// value_n = (n+1)! sup_{k+l=n} seminorm_kl, n = 0..N; ties go to the smallest k.
NormSequence as_sequence(const CoeffTable& a, const CoeffTable* b, int truncation);

// value_n = n! sum_{k=1}^n seminorm_kl(k, n-k), n = 1..N.
NormSequence al1_sequence(const CoeffTable& a, const CoeffTable* b, int truncation);

// Attaches a reference value and fits the tail trend.
void set_reference(NormSequence& seq, double reference);

// lambda_a a + lambda_b b, cell-wise; shapes and C0 must agree.
CoeffTable combine_tables(double lambda_a, const CoeffTable& a, double lambda_b, const CoeffTable& b);

/// Certified bounds of the projective norm of sig_a - sig_b on the truncated algebra:
/// lower = max |coefficient difference|, upper = sum of all |coefficient differences|.
struct ProjBounds {
    double lower = 0.0;
    double upper = 0.0;
};
ProjBounds proj_bounds(const TruncatedSignature& a, const TruncatedSignature& b);

// sup_s |a'(s) - b'(s)| on a uniform grid (Euclidean norm of the difference).
double c1_distance(const Curve& a, const Curve& b, int grid_points = 10001);
// int_0^1 |a'(s) - b'(s)| ds by composite Gauss-Legendre.
double bv_distance(const Curve& a, const Curve& b, int panels = 1024);

struct IsometryReport {
    NormSequence as;
    NormSequence al1;
    double d_c1 = 0.0;
    double d_bv = 0.0;
    double as_rel_deviation = 0.0;   // |AS_N - d_C1| / max(d_C1, tiny)
    double al1_rel_deviation = 0.0;  // |AL1_N - d_BV| / max(d_BV, tiny)
};

// Both curves need C0 = 1 and the same (d, i).
IsometryReport isometry_check(const Curve& a, const Curve& b, int truncation,
                              const QuadConfig& cfg = {});

struct DiscontinuityRow {
    int m = 0;
    double proj_lower = 0.0;
    double proj_upper = 0.0;
    double d_bv = 0.0;
};

/// Truncated signatures of helix(m) against the straight line (t, 0, 0). Each helix
/// signature is the m-th tensor power of one period's polyline signature.
std::vector<DiscontinuityRow> discontinuity_demo(std::span<const int> m_values, int truncation,
                                                 int segments_per_period = 256);

struct ModContConfig {
    int perturbation_freq = 1;       // perturbation lambda (0, sin(2 pi k s) / (2 pi k))
    std::vector<double> lambdas;     // perturbation scales
    std::vector<double> epsilons;    // each in (0, 1)
    double eps0 = 0.25;
    double alpha = 1.0;
    double ball_radius = 10.0;       // K
    double c1bar = 1.0;
    double c2bar = 1.0;
    int signature_levels = 6;
    int vertices = 2001;
};

struct PerturbationRow {
    double lambda = 0.0;
    double proj_upper = 0.0;
    double d_c1 = 0.0;
};

struct ModContRow {
    double epsilon = 0.0;
    long n_required = 0;
    double delta_theorem = 0.0;
    double delta_empirical = 0.0;  // largest proj bound among perturbations with d_C1 < eps
    double dc1 = 0.0;              // largest d_C1 among perturbations with proj < delta
    bool holds = true;             // dc1 < eps
};

struct ModContReport {
    std::vector<PerturbationRow> perturbations;
    std::vector<double> skipped_lambdas;  // left the K-ball
    std::vector<ModContRow> rows;
};

ModContReport modcont_experiment(const Curve& base, const ModContConfig& cfg);

// delta(eps) = (C2bar / sqrt d) C0^n / (n+1)! eps with the smallest n > C1bar eps^{1/((eps0 - 1/2) alpha)}.
double modcont_delta(double epsilon, double axial_speed, int dimension, const ModContConfig& cfg,
                     long* n_required = nullptr);

}  // namespace sigaxial
