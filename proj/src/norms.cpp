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

#include "sigaxial/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "sigaxial/errors.hpp"
#include "sigaxial/parallel.hpp"
#include "sigaxial/quadrature.hpp"
#include "sigaxial/stats.hpp"

namespace sigaxial {

namespace {

void check_pair(const CoeffTable& a, const CoeffTable* b, int truncation) {
    if (truncation < 0 || truncation > a.truncation()) {
        throw ConfigError("norm truncation outside the table range");
    }
    if (b == nullptr) {
        return;
    }
    if (a.dimension() != b->dimension() || a.axial_index() != b->axial_index() ||
        a.truncation() != b->truncation()) {
        throw ConfigError("norm of a difference needs tables with equal (d, i, N)");
    }
    if (a.axial_speed() != 1.0 || b->axial_speed() != 1.0) {
        throw ConfigError("norm of a difference needs both tables in the C0 = 1 class");
    }
}

// Euclidean norm over j != i of the scaled cell (difference).
double scaled_norm(const CoeffTable& a, const CoeffTable* b, int k, int l) {
    double sq = 0.0;
    for (int j = 1; j <= a.dimension(); ++j) {
        if (j == a.axial_index()) {
            continue;
        }
        double v = a.at(j, k, l) - (b != nullptr ? b->at(j, k, l) : 0.0);
        sq += v * v;
    }
    return std::sqrt(sq);
}

// value * C0^n, zero-safe.
double rescale(double value, int n, double axial_speed) {
    if (value == 0.0 || axial_speed == 1.0) {
        return value;
    }
    return std::exp(std::log(value) + n * std::log(axial_speed));
}

}  // namespace

SignedLog seminorm_kl(const CoeffTable& a, const CoeffTable* b, int k, int l) {
    check_pair(a, b, a.truncation());
    if (k < 0 || l < 0 || k + l > a.truncation()) {
        throw ConfigError("seminorm index outside the table");
    }
    const double norm = scaled_norm(a, b, k, l);
    return raw_from_scaled(norm, k, l, a.axial_speed());
}

NormSequence as_sequence(const CoeffTable& a, const CoeffTable* b, int truncation) {
    check_pair(a, b, truncation);
    NormSequence seq;
    seq.kind = NormKind::as;
    seq.values.resize(static_cast<std::size_t>(truncation) + 1);
    parallel_for(seq.values.size(), [&](std::size_t index) {
        const int n = static_cast<int>(index);
        std::vector<double> row(static_cast<std::size_t>(n) + 1);
        double best = -1.0;
        for (int k = 0; k <= n; ++k) {
            row[static_cast<std::size_t>(k)] = scaled_norm(a, b, k, n - k);
            best = std::max(best, row[static_cast<std::size_t>(k)]);
        }
        // cells agree only to the quadrature tolerance, so near-ties count as ties
        const double slack = 1e-12 * std::max(1.0, best);
        int best_k = 0;
        while (row[static_cast<std::size_t>(best_k)] < best - slack) {
            ++best_k;
        }
        seq.values[index] = {n, rescale(best, n, a.axial_speed()), best_k};
    });
    seq.trend_slope = std::numeric_limits<double>::quiet_NaN();
    return seq;
}

NormSequence al1_sequence(const CoeffTable& a, const CoeffTable* b, int truncation) {
    check_pair(a, b, truncation);
    NormSequence seq;
    seq.kind = NormKind::al1;
    if (truncation < 1) {
        return seq;
    }
    seq.values.resize(static_cast<std::size_t>(truncation));
    parallel_for(seq.values.size(), [&](std::size_t index) {
        const int n = static_cast<int>(index) + 1;
        double total = 0.0;
        for (int k = 1; k <= n; ++k) {
            total += scaled_norm(a, b, k, n - k);
        }
        seq.values[index] = {n, rescale(total / (n + 1), n, a.axial_speed()), -1};
    });
    seq.trend_slope = std::numeric_limits<double>::quiet_NaN();
    return seq;
}

void set_reference(NormSequence& seq, double reference) {
    seq.reference = reference;
    std::vector<double> ns;
    std::vector<double> gaps;
    for (const auto& point : seq.values) {
        ns.push_back(point.n);
        gaps.push_back(std::abs(point.value - reference));
    }
    const double tail = ns.empty() ? 0.0 : 0.5 * (ns.front() + ns.back());
    LineFit fit = fit_loglog_tail(ns, gaps, tail);
    seq.trend_slope = fit.slope;
}

CoeffTable combine_tables(double lambda_a, const CoeffTable& a, double lambda_b, const CoeffTable& b) {
    if (a.dimension() != b.dimension() || a.axial_index() != b.axial_index() ||
        a.truncation() != b.truncation() || a.axial_speed() != b.axial_speed()) {
        throw ConfigError("table combination needs equal (d, i, N, C0)");
    }
    CoeffTable out(a.dimension(), a.axial_index(), a.axial_speed(), a.truncation());
    for (int j = 1; j <= a.dimension(); ++j) {
        if (j == a.axial_index()) {
            continue;
        }
        for (int n = 0; n <= a.truncation(); ++n) {
            for (int k = 0; k <= n; ++k) {
                out.set(j, k, n - k, lambda_a * a.at(j, k, n - k) + lambda_b * b.at(j, k, n - k));
            }
        }
    }
    out.set_tolerance_achieved(std::abs(lambda_a) * a.tolerance_achieved() +
                               std::abs(lambda_b) * b.tolerance_achieved());
    return out;
}

ProjBounds proj_bounds(const TruncatedSignature& a, const TruncatedSignature& b) {
    if (a.dimension() != b.dimension() || a.truncation() != b.truncation()) {
        throw ConfigError("projective bounds need signatures of equal shape");
    }
    ProjBounds bounds;
    for (int n = 0; n <= a.truncation(); ++n) {
        auto la = a.level(n);
        auto lb = b.level(n);
        for (std::size_t w = 0; w < la.size(); ++w) {
            const double diff = std::abs(la[w] - lb[w]);
            bounds.lower = std::max(bounds.lower, diff);
            bounds.upper += diff;
        }
    }
    return bounds;
}

namespace {

void check_same_class(const Curve& a, const Curve& b) {
    if (a.dimension() != b.dimension() || a.axial_index() != b.axial_index()) {
        throw ConfigError("curve distance needs curves with equal (d, i)");
    }
}

double derivative_gap(const Curve& a, const Curve& b, double s) {
    double sq = 0.0;
    for (int j = 1; j <= a.dimension(); ++j) {
        double diff = a.derivative(j, s) - b.derivative(j, s);
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

}  // namespace

double c1_distance(const Curve& a, const Curve& b, int grid_points) {
    check_same_class(a, b);
    if (grid_points < 2) {
        throw ConfigError("C1 distance needs at least two grid points");
    }
    double sup = 0.0;
    for (int m = 0; m < grid_points; ++m) {
        sup = std::max(sup, derivative_gap(a, b, static_cast<double>(m) / (grid_points - 1)));
    }
    return sup;
}

double bv_distance(const Curve& a, const Curve& b, int panels) {
    check_same_class(a, b);
    std::vector<double> cuts;
    for (int p = 0; p <= panels; ++p) {
        cuts.push_back(static_cast<double>(p) / panels);
    }
    for (const Curve* c : {&a, &b}) {
        cuts.insert(cuts.end(), c->breakpoints().begin(), c->breakpoints().end());
        for (double s : c->singular_points()) {
            cuts.push_back(s);
            const double h = 1.0 / panels;
            append_graded_cuts(cuts, std::max(0.0, s - h), s, s, 12);
            append_graded_cuts(cuts, s, std::min(1.0, s + h), s, 12);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return integrate_panels([&](double s) { return derivative_gap(a, b, s); }, cuts, 16);
}

IsometryReport isometry_check(const Curve& a, const Curve& b, int truncation, const QuadConfig& cfg) {
    check_same_class(a, b);
    if (a.axial_speed() != 1.0 || b.axial_speed() != 1.0) {
        throw ConfigError("isometry check needs both curves in the C0 = 1 class");
    }
    const CoeffTable ta = build_table(a, truncation, cfg);
    const CoeffTable tb = build_table(b, truncation, cfg);
    IsometryReport report;
    report.d_c1 = c1_distance(a, b);
    report.d_bv = bv_distance(a, b);
    report.as = as_sequence(ta, &tb, truncation);
    report.al1 = al1_sequence(ta, &tb, truncation);
    set_reference(report.as, report.d_c1);
    set_reference(report.al1, report.d_bv);
    constexpr double tiny = 1e-300;
    report.as_rel_deviation = std::abs(report.as.last() - report.d_c1) / std::max(report.d_c1, tiny);
    report.al1_rel_deviation =
        std::abs(report.al1.last() - report.d_bv) / std::max(report.d_bv, tiny);
    return report;
}

std::vector<DiscontinuityRow> discontinuity_demo(std::span<const int> m_values, int truncation,
                                                 int segments_per_period) {
    if (m_values.empty()) {
        throw ConfigError("discontinuity demo needs at least one m");
    }
    if (truncation < 1 || truncation > 12) {
        throw ConfigError("discontinuity demo truncation must lie in 1..12");
    }
    if (segments_per_period < 3) {
        throw ConfigError("discontinuity demo needs at least 3 segments per period");
    }
    const std::vector<double> straight_step{1.0, 0.0, 0.0};
    const TruncatedSignature straight = segment_signature(straight_step, truncation);
    const Curve line = make_preset("linear", {{"slope", 0.0}, {"d", 3}});

    std::vector<DiscontinuityRow> rows;
    for (int m : m_values) {
        if (m < 1) {
            throw ConfigError("helix frequency m must be positive");
        }
        const double omega = 2.0 * std::numbers::pi * m;
        Polyline period;
        period.dimension = 3;
        for (int p = 0; p <= segments_per_period; ++p) {
            const double t = static_cast<double>(p) / (segments_per_period * m);
            period.grid.push_back(t);
            period.vertices.push_back(
                {t, std::cos(omega * t) / omega, std::sin(omega * t) / omega});
        }
        const TruncatedSignature one = chen_truncated_signature(period, truncation);
        TruncatedSignature full = one;
        for (int r = 1; r < m; ++r) {
            full = full * one;
        }
        const ProjBounds bounds = proj_bounds(full, straight);
        const Curve helix = make_preset("helix", {{"n", m}});
        rows.push_back({m, bounds.lower, bounds.upper, bv_distance(helix, line)});
    }
    return rows;
}

double modcont_delta(double epsilon, double axial_speed, int dimension, const ModContConfig& cfg,
                     long* n_required) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("modulus experiment needs epsilon in (0, 1)");
    }
    const double exponent = 1.0 / ((cfg.eps0 - 0.5) * cfg.alpha);
    const double threshold = cfg.c1bar * std::pow(epsilon, exponent);
    if (!std::isfinite(threshold) || threshold > 1e15) {
        if (n_required != nullptr) {
            *n_required = -1;
        }
        return 0.0;
    }
    const long n = static_cast<long>(std::floor(threshold)) + 1;
    if (n_required != nullptr) {
        *n_required = n;
    }
    const double log_delta = std::log(cfg.c2bar) - 0.5 * std::log(static_cast<double>(dimension)) +
                             n * std::log(axial_speed) - std::lgamma(n + 2.0) + std::log(epsilon);
    return std::exp(log_delta);
}

ModContReport modcont_experiment(const Curve& base, const ModContConfig& cfg) {
    if (!(cfg.eps0 > 0.0 && cfg.eps0 < 0.5)) {
        throw ConfigError("eps0 must lie in (0, 1/2)");
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
        throw ConfigError("alpha must lie in (0, 1]");
    }
    if (cfg.lambdas.empty() || cfg.epsilons.empty()) {
        throw ConfigError("modulus experiment needs perturbation scales and epsilons");
    }
    if (base.dimension() != 2) {
        throw ConfigError("modulus experiment perturbs the second coordinate of a planar curve");
    }
    const Curve bump = make_preset(
        "sine", {{"freq", cfg.perturbation_freq}, {"c0", base.axial_speed()}});
    const TruncatedSignature base_sig =
        chen_truncated_signature(sample_polyline(base, cfg.vertices), cfg.signature_levels);

    ModContReport report;
    std::vector<std::optional<PerturbationRow>> computed(cfg.lambdas.size());
    parallel_for(cfg.lambdas.size(), [&](std::size_t index) {
        const double lambda = cfg.lambdas[index];
        const Curve perturbed = linear_combination(1.0, base, lambda, bump);
        const DerivativeNorms norms = sup_norm_and_holder(perturbed, cfg.alpha, 401);
        if (norms.sup > cfg.ball_radius || norms.holder > cfg.ball_radius) {
            return;
        }
        const TruncatedSignature sig =
            chen_truncated_signature(sample_polyline(perturbed, cfg.vertices), cfg.signature_levels);
        computed[index] =
            PerturbationRow{lambda, proj_bounds(base_sig, sig).upper, c1_distance(base, perturbed, 2001)};
    });
    for (std::size_t index = 0; index < computed.size(); ++index) {
        if (computed[index]) {
            report.perturbations.push_back(*computed[index]);
        } else {
            report.skipped_lambdas.push_back(cfg.lambdas[index]);
        }
    }

    for (double eps : cfg.epsilons) {
        ModContRow row;
        row.epsilon = eps;
        row.delta_theorem = modcont_delta(eps, base.axial_speed(), base.dimension(), cfg, &row.n_required);
        for (const auto& p : report.perturbations) {
            if (p.d_c1 < eps) {
                row.delta_empirical = std::max(row.delta_empirical, p.proj_upper);
            }
            if (p.proj_upper < row.delta_theorem) {
                row.dc1 = std::max(row.dc1, p.d_c1);
            }
        }
        row.holds = row.dc1 < eps;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace sigaxial
