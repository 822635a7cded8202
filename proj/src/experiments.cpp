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

#include "sigaxial/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "sigaxial/beta_kernel.hpp"
#include "sigaxial/curve.hpp"
#include "sigaxial/errors.hpp"
#include "sigaxial/inversion.hpp"
#include "sigaxial/norms.hpp"
#include "sigaxial/parallel.hpp"
#include "sigaxial/quadrature.hpp"
#include "sigaxial/rational.hpp"
#include "sigaxial/stats.hpp"

namespace sigaxial {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class T>
T manifest_value(const nlohmann::json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

bool has_curve(const ExperimentConfig& cfg) {
    return !cfg.polyline_path.empty() || (cfg.curve.is_object() && !cfg.curve.empty());
}

Curve resolve_curve(const ExperimentConfig& cfg, const char* fallback) {
    if (!cfg.polyline_path.empty()) {
        std::ifstream in(cfg.polyline_path);
        if (!in) {
            throw ConfigError("cannot read polyline file '" + cfg.polyline_path + "'");
        }
        return reparameterize_to_axial_linear(read_polyline_csv(in), 1);
    }
    if (cfg.curve.is_object() && !cfg.curve.empty()) {
        return curve_from_json(cfg.curve);
    }
    if (fallback == nullptr) {
        throw ConfigError("command '" + cfg.command + "' needs a curve (--preset or --polyline)");
    }
    return make_preset(fallback);
}

struct TableSource {
    CoeffTable table;
    std::optional<Curve> oracle;
};

TableSource resolve_table(const ExperimentConfig& cfg, int default_truncation) {
    std::optional<Curve> oracle;
    if (has_curve(cfg)) {
        oracle = resolve_curve(cfg, nullptr);
    }
    if (!cfg.table_path.empty()) {
        std::ifstream in(cfg.table_path);
        if (!in) {
            throw ConfigError("cannot read table file '" + cfg.table_path + "'");
        }
        return {ingest_table(in), oracle};
    }
    if (!oracle) {
        throw ConfigError("command '" + cfg.command + "' needs --table or a curve");
    }
    const int truncation = cfg.truncation.value_or(default_truncation);
    return {build_table(*oracle, truncation, cfg.quad), oracle};
}

int default_component(const CoeffTable& table, const ExperimentConfig& cfg) {
    if (cfg.j) {
        if (*cfg.j < 1 || *cfg.j > table.dimension() || *cfg.j == table.axial_index()) {
            throw ConfigError("--j must name a non-axial component");
        }
        return *cfg.j;
    }
    return table.axial_index() == 1 ? 2 : 1;
}

void check_eps0(double eps0) {
    if (!(eps0 > 0.0 && eps0 < 0.5)) {
        throw ConfigError("eps0 must lie in (0, 1/2)");
    }
}

std::string echo_number(double v) { return format_number(v); }

}  // namespace

void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& manifest) {
    if (!manifest.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    for (const auto& [key, value] : manifest.items()) {
        if (key == "command") {
            cfg.command = manifest_value<std::string>(value, key);
        } else if (key == "curve") {
            if (!value.is_object()) {
                throw ConfigError("config key 'curve' must be an object");
            }
            cfg.curve = value;
        } else if (key == "curve_b") {
            if (!value.is_object()) {
                throw ConfigError("config key 'curve_b' must be an object");
            }
            cfg.curve_b = value;
        } else if (key == "table") {
            cfg.table_path = manifest_value<std::string>(value, key);
        } else if (key == "polyline") {
            cfg.polyline_path = manifest_value<std::string>(value, key);
        } else if (key == "out") {
            cfg.out_path = manifest_value<std::string>(value, key);
        } else if (key == "plot") {
            cfg.plot_path = manifest_value<std::string>(value, key);
        } else if (key == "N") {
            cfg.truncation = manifest_value<int>(value, key);
        } else if (key == "nmax") {
            cfg.nmax = manifest_value<long>(value, key);
        } else if (key == "x") {
            cfg.x = manifest_value<double>(value, key);
        } else if (key == "j") {
            cfg.j = manifest_value<int>(value, key);
        } else if (key == "scheme") {
            cfg.scheme = manifest_value<std::string>(value, key);
        } else if (key == "eps0") {
            cfg.eps0 = manifest_value<double>(value, key);
        } else if (key == "alpha") {
            cfg.alpha = manifest_value<double>(value, key);
        } else if (key == "seed") {
            cfg.seed = manifest_value<std::uint64_t>(value, key);
        } else if (key == "n") {
            cfg.n = manifest_value<int>(value, key);
        } else if (key == "norm") {
            cfg.norm = manifest_value<std::string>(value, key);
        } else if (key == "m_list") {
            cfg.m_list = manifest_value<std::vector<int>>(value, key);
        } else if (key == "n_list") {
            cfg.n_list = manifest_value<std::vector<long>>(value, key);
        } else if (key == "grid") {
            cfg.grid = manifest_value<int>(value, key);
        } else if (key == "slack") {
            cfg.slack = manifest_value<double>(value, key);
        } else if (key == "vertices") {
            cfg.vertices = manifest_value<int>(value, key);
        } else if (key == "levels") {
            cfg.levels = manifest_value<int>(value, key);
        } else if (key == "tolerance") {
            cfg.tolerance = manifest_value<double>(value, key);
        } else if (key == "raw") {
            cfg.raw = manifest_value<bool>(value, key);
        } else if (key == "epsilons") {
            cfg.epsilons = manifest_value<std::vector<double>>(value, key);
        } else if (key == "lambdas") {
            cfg.lambdas = manifest_value<std::vector<double>>(value, key);
        } else if (key == "lambda_count") {
            cfg.lambda_count = manifest_value<int>(value, key);
        } else if (key == "c1bar") {
            cfg.c1bar = manifest_value<double>(value, key);
        } else if (key == "c2bar") {
            cfg.c2bar = manifest_value<double>(value, key);
        } else if (key == "K") {
            cfg.ball_radius = manifest_value<double>(value, key);
        } else if (key == "quad") {
            if (!value.is_object()) {
                throw ConfigError("config key 'quad' must be an object");
            }
            for (const auto& [qkey, qvalue] : value.items()) {
                if (qkey == "points") {
                    cfg.quad.points = manifest_value<int>(qvalue, qkey);
                } else if (qkey == "refinement") {
                    cfg.quad.refinement = manifest_value<int>(qvalue, qkey);
                } else if (qkey == "tolerance") {
                    cfg.quad.tolerance = manifest_value<double>(qvalue, qkey);
                } else if (qkey == "max_refinements") {
                    cfg.quad.max_refinements = manifest_value<int>(qvalue, qkey);
                } else {
                    throw ConfigError("unknown quadrature key '" + qkey + "'");
                }
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> echo;
    echo.emplace_back("command", cfg.command);
    if (cfg.curve.is_object() && !cfg.curve.empty()) {
        echo.emplace_back("curve", cfg.curve.dump());
    }
    if (cfg.curve_b.is_object() && !cfg.curve_b.empty()) {
        echo.emplace_back("curve_b", cfg.curve_b.dump());
    }
    if (!cfg.table_path.empty()) {
        echo.emplace_back("table", cfg.table_path);
    }
    if (!cfg.polyline_path.empty()) {
        echo.emplace_back("polyline", cfg.polyline_path);
    }
    if (cfg.truncation) {
        echo.emplace_back("N", std::to_string(*cfg.truncation));
    }
    if (cfg.nmax) {
        echo.emplace_back("nmax", std::to_string(*cfg.nmax));
    }
    if (cfg.x) {
        echo.emplace_back("x", echo_number(*cfg.x));
    }
    if (cfg.j) {
        echo.emplace_back("j", std::to_string(*cfg.j));
    }
    if (cfg.n) {
        echo.emplace_back("n", std::to_string(*cfg.n));
    }
    echo.emplace_back("scheme", cfg.scheme);
    echo.emplace_back("eps0", echo_number(cfg.eps0));
    if (cfg.alpha) {
        echo.emplace_back("alpha", echo_number(*cfg.alpha));
    }
    echo.emplace_back("seed", std::to_string(cfg.seed));
    echo.emplace_back("quad", std::to_string(cfg.quad.points) + "/" +
                                  std::to_string(cfg.quad.refinement) + "/" +
                                  echo_number(cfg.quad.tolerance) + "/" +
                                  std::to_string(cfg.quad.max_refinements));
    return echo;
}

std::vector<double> log_uniform_draws(std::uint64_t seed, int count, double lo, double hi) {
    if (!(lo > 0.0 && hi >= lo) || count < 0) {
        throw ConfigError("log-uniform draws need 0 < lo <= hi and a nonnegative count");
    }
    std::mt19937_64 engine(seed);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    std::vector<double> out;
    for (int c = 0; c < count; ++c) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        out.push_back(std::exp(log_lo + u * (log_hi - log_lo)));
    }
    return out;
}

bool preset_accepts(const std::string& preset, const std::string& key) {
    if (key == "c0" || key == "scale") {
        return true;
    }
    if (preset == "linear") {
        return key == "slope" || key == "d";
    }
    if (preset == "monomial") {
        return key == "m";
    }
    if (preset == "sine") {
        return key == "freq" || key == "amp";
    }
    if (preset == "helix") {
        return key == "n";
    }
    if (preset == "holder_kink") {
        return key == "alpha" || key == "x0";
    }
    if (preset == "polynomial") {
        return key == "coeffs";
    }
    return false;
}

ExperimentReport run_rate_experiment(const ExperimentConfig& cfg) {
    check_eps0(cfg.eps0);
    const Curve curve = resolve_curve(cfg, nullptr);
    if (!curve.holder()) {
        throw ConfigError("rate experiment needs a curve with Hoelder metadata");
    }
    const double alpha = cfg.alpha.value_or(curve.holder()->alpha);
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ConfigError("alpha must lie in (0, 1]");
    }
    double x = 0.5;
    if (cfg.x) {
        x = *cfg.x;
    } else if (cfg.curve.is_object() && cfg.curve.contains("x0") && cfg.curve.at("x0").is_number()) {
        x = cfg.curve.at("x0").get<double>();
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ConfigError("x must lie in [0, 1]");
    }
    const long q_max = cfg.nmax.value_or(512);
    if (q_max < 2) {
        throw ConfigError("rate experiment needs nmax >= 2");
    }
    const int j = cfg.j.value_or(curve.axial_index() == 1 ? 2 : 1);
    if (j < 1 || j > curve.dimension() || j == curve.axial_index()) {
        throw ConfigError("--j must name a non-axial component");
    }

    const RationalScheme scheme(parse_scheme(cfg.scheme), x);
    std::vector<RationalPair> pairs = scheme.pairs(q_max);
    if (pairs.empty() || !meets_rate_condition(pairs, x)) {
        throw ConfigError("scheme '" + cfg.scheme +
                          "' violates |p/q - x| < q^{-1/2} or has non-increasing denominators");
    }

    const double truth = curve.derivative(j, x);
    std::vector<double> estimates(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t m) {
        const auto q = static_cast<int>(pairs[m].q);
        const auto p = static_cast<int>(pairs[m].p);
        estimates[m] = scaled_coefficient(curve, j, KernelIndex(p, q - p), cfg.quad).value;
    });

    ExperimentReport report;
    report.title = "Recovery error at x = " + format_number(x);
    report.columns = {"q", "p", "estimate", "error"};
    std::vector<double> qs;
    std::vector<double> errors;
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        const double err = std::abs(estimates[m] - truth);
        report.rows.push_back({static_cast<double>(pairs[m].q), static_cast<double>(pairs[m].p),
                               estimates[m], err});
        qs.push_back(static_cast<double>(pairs[m].q));
        errors.push_back(err);
    }

    const double q_lo = qs.front();
    const double q_hi = qs.back();
    const double tail_start = q_lo + 0.5 * (q_hi - q_lo);
    double tail_max = 0.0;
    for (std::size_t m = 0; m < qs.size(); ++m) {
        if (qs[m] >= tail_start) {
            tail_max = std::max(tail_max, errors[m]);
        }
    }
    const double theory = -(0.5 - cfg.eps0) * alpha;
    const double bound = theory + cfg.slack;
    LineFit fit = fit_loglog_tail(qs, errors, tail_start);
    const bool degenerate = tail_max < 1e-12 || fit.points < 2 || !std::isfinite(fit.slope);
    if (degenerate) {
        fit.slope = fit.intercept = kNaN;
    }
    report.summary = {{"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"theory_slope", theory},
                      {"bound", bound},
                      {"tail_start", tail_start},
                      {"max_error", *std::max_element(errors.begin(), errors.end())},
                      {"degenerate", degenerate ? 1.0 : 0.0},
                      {"pass", degenerate ? kNaN : (fit.slope <= bound ? 1.0 : 0.0)}};

    report.plot_kind = PlotKind::loglog;
    report.x_label = "q";
    report.y_label = "|estimate - x'(x)|";
    report.series.push_back({"error", qs, errors, true});
    if (!degenerate) {
        std::vector<double> fit_y;
        std::vector<double> ref_y;
        const std::vector<double> ends{tail_start, q_hi};
        for (double q : ends) {
            fit_y.push_back(std::exp(fit.intercept + fit.slope * std::log(q)));
        }
        // theoretical slope anchored at the fitted value at the start of the tail
        for (double q : ends) {
            ref_y.push_back(fit_y.front() * std::pow(q / tail_start, theory));
        }
        report.series.push_back({"fit slope " + format_number(std::round(fit.slope * 1e4) / 1e4),
                                 ends, fit_y, false});
        report.series.push_back({"theory slope " + format_number(theory), ends, ref_y, false});
    }
    return report;
}

ExperimentReport run_invert(const ExperimentConfig& cfg) {
    if (!cfg.x) {
        throw ConfigError("invert needs --x");
    }
    const long default_n = cfg.nmax.value_or(64);
    TableSource source = resolve_table(cfg, static_cast<int>(std::min<long>(default_n, 4096)));
    const CoeffTable& table = source.table;
    const int j = default_component(table, cfg);
    const long n_max = cfg.nmax.value_or(table.truncation());
    const RationalScheme scheme(parse_scheme(cfg.scheme), *cfg.x);
    const RecoverySequence seq = recover_derivative_at(table, j, scheme, n_max);
    if (seq.steps.empty()) {
        throw ConfigError("no approximation pairs fit inside the table");
    }

    ExperimentReport report;
    report.title = "Derivative recovery at x = " + format_number(*cfg.x);
    report.columns = {"n", "p", "q", "estimate"};
    std::optional<double> truth;
    if (source.oracle) {
        truth = source.oracle->derivative(j, *cfg.x);
        report.columns.push_back("err_vs_oracle");
    }
    std::vector<double> qs;
    std::vector<double> ys;
    for (const auto& step : seq.steps) {
        std::vector<double> row{static_cast<double>(step.n), static_cast<double>(step.p),
                                static_cast<double>(step.q), step.estimate};
        if (truth) {
            row.push_back(std::abs(step.estimate - *truth));
        }
        qs.push_back(static_cast<double>(step.q));
        ys.push_back(truth ? row.back() : step.estimate);
        report.rows.push_back(std::move(row));
    }
    report.summary = {{"final_estimate", seq.final_estimate},
                      {"stagnation", seq.stagnation},
                      {"truncated", seq.truncated ? 1.0 : 0.0}};
    if (truth) {
        report.summary.emplace_back("final_error", std::abs(seq.final_estimate - *truth));
    }
    report.x_label = "q";
    if (truth) {
        report.plot_kind = PlotKind::loglog;
        report.y_label = "error";
        report.series.push_back({"error", qs, ys, true});
    } else {
        report.plot_kind = PlotKind::profile;
        report.y_label = "estimate";
        report.series.push_back({"estimate", qs, ys, false});
    }
    return report;
}

ExperimentReport run_trace(const ExperimentConfig& cfg) {
    TableSource source = resolve_table(cfg, cfg.n.value_or(256));
    const CoeffTable& table = source.table;
    const int n = cfg.n.value_or(table.truncation());
    std::vector<std::vector<ProfilePoint>> profiles;
    for (int j = 1; j <= table.dimension(); ++j) {
        if (j != table.axial_index()) {
            profiles.push_back(recover_profile(table, j, n));
        }
    }
    const Polyline trace = reconstruct_trace(profiles, table.axial_speed(), table.axial_index());

    ExperimentReport report;
    report.title = "Recovered trace, n = " + std::to_string(n);
    report.columns = {"s"};
    for (int j = 1; j <= trace.dimension; ++j) {
        report.columns.push_back("x" + std::to_string(j));
    }
    for (std::size_t m = 0; m < trace.size(); ++m) {
        std::vector<double> row{trace.grid[m]};
        row.insert(row.end(), trace.vertices[m].begin(), trace.vertices[m].end());
        report.rows.push_back(std::move(row));
    }
    report.plot_kind = PlotKind::profile;
    report.x_label = "s";
    report.y_label = "coordinate";
    std::size_t slot = 0;
    for (int j = 1; j <= table.dimension(); ++j) {
        if (j == table.axial_index()) {
            continue;
        }
        std::vector<double> s;
        std::vector<double> v;
        for (const auto& point : profiles[slot]) {
            s.push_back(point.s);
            v.push_back(point.value);
        }
        report.series.push_back({"recovered x" + std::to_string(j) + "'", s, v, true});
        if (source.oracle) {
            std::vector<double> exact;
            for (double t : s) {
                exact.push_back(source.oracle->derivative(j, t));
            }
            report.series.push_back({"true x" + std::to_string(j) + "'", s, exact, false});
        }
        ++slot;
    }
    return report;
}

ExperimentReport run_length(const ExperimentConfig& cfg) {
    TableSource source = resolve_table(cfg, cfg.n.value_or(256));
    const CoeffTable& table = source.table;
    const int n_last = cfg.n.value_or(table.truncation());
    if (n_last < 1 || n_last > table.truncation()) {
        throw ConfigError("--n must lie in 1..N");
    }
    std::optional<double> reference;
    if (source.oracle) {
        const Curve& curve = *source.oracle;
        reference = integrate(
            [&](double s) {
                double acc = 0.0;
                for (double v : curve.derivative(s)) {
                    acc += v * v;
                }
                return std::sqrt(acc);
            },
            0.0, 1.0, 20, 1024);
    }

    ExperimentReport report;
    report.title = "Recovered length";
    report.columns = {"n", "length"};
    if (reference) {
        report.columns.push_back("reference");
        report.columns.push_back("abs_err");
    }
    std::vector<double> ns(static_cast<std::size_t>(n_last));
    std::vector<double> values(ns.size());
    parallel_for(ns.size(), [&](std::size_t m) {
        ns[m] = static_cast<double>(m + 1);
        values[m] = recover_length(table, static_cast<int>(m + 1));
    });
    for (std::size_t m = 0; m < ns.size(); ++m) {
        std::vector<double> row{ns[m], values[m]};
        if (reference) {
            row.push_back(*reference);
            row.push_back(std::abs(values[m] - *reference));
        }
        report.rows.push_back(std::move(row));
    }
    report.summary = {{"final_length", values.back()}};
    if (reference) {
        report.summary.emplace_back("reference", *reference);
        report.summary.emplace_back("final_abs_err", std::abs(values.back() - *reference));
    }
    report.plot_kind = PlotKind::profile;
    report.x_label = "n";
    report.y_label = "length";
    report.series.push_back({"recovered", ns, values, false});
    if (reference) {
        report.series.push_back({"reference", ns, std::vector<double>(ns.size(), *reference), false});
    }
    return report;
}

ExperimentReport run_norms(const ExperimentConfig& cfg) {
    NormKind kind;
    if (cfg.norm == "as") {
        kind = NormKind::as;
    } else if (cfg.norm == "al1") {
        kind = NormKind::al1;
    } else {
        throw ConfigError("--norm must be as or al1");
    }
    const Curve a = resolve_curve(cfg, nullptr);
    const Curve b = cfg.curve_b.is_object() && !cfg.curve_b.empty()
                        ? curve_from_json(cfg.curve_b)
                        : make_preset("linear", {{"slope", 0.0}, {"d", a.dimension()}});
    if (a.axial_speed() != 1.0 || b.axial_speed() != 1.0) {
        throw ConfigError("norm experiments need unit axial speed (c0 = 1)");
    }
    const int truncation = cfg.truncation.value_or(256);
    const CoeffTable ta = build_table(a, truncation, cfg.quad);
    const CoeffTable tb = build_table(b, truncation, cfg.quad);
    NormSequence seq =
        kind == NormKind::as ? as_sequence(ta, &tb, truncation) : al1_sequence(ta, &tb, truncation);
    const double reference = kind == NormKind::as ? c1_distance(a, b) : bv_distance(a, b);
    set_reference(seq, reference);

    ExperimentReport report;
    report.title = kind == NormKind::as ? "AS seminorm vs C1 distance" : "AL1 seminorm vs BV distance";
    report.columns = {"n", "value", "reference", "rel_err"};
    std::vector<double> ns;
    std::vector<double> rel;
    for (const auto& point : seq.values) {
        const double r = reference > 0.0 ? std::abs(point.value - reference) / reference : kNaN;
        report.rows.push_back({static_cast<double>(point.n), point.value, reference, r});
        ns.push_back(static_cast<double>(point.n));
        rel.push_back(r);
    }
    report.summary = {{"last_value", seq.last()},
                      {"reference", reference},
                      {"last_rel_err", rel.empty() ? kNaN : rel.back()},
                      {"trend_slope", seq.trend_slope}};
    report.plot_kind = PlotKind::loglog;
    report.x_label = "n";
    report.y_label = "relative error";
    report.series.push_back({"rel_err", ns, rel, false});
    return report;
}

ExperimentReport run_discont(const ExperimentConfig& cfg) {
    const std::vector<int> ms = cfg.m_list.empty() ? std::vector<int>{1, 2, 4, 8, 16} : cfg.m_list;
    const int truncation = cfg.truncation.value_or(10);
    const auto rows = discontinuity_demo(ms, truncation);

    ExperimentReport report;
    report.title = "Helix(m) against the straight line";
    report.columns = {"m", "proj_upper", "d_bv"};
    std::vector<double> mx;
    std::vector<double> upper;
    std::vector<double> dbv;
    bool decreasing = true;
    double worst_dbv = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        report.rows.push_back({static_cast<double>(rows[r].m), rows[r].proj_upper, rows[r].d_bv});
        mx.push_back(rows[r].m);
        upper.push_back(rows[r].proj_upper);
        dbv.push_back(rows[r].d_bv);
        worst_dbv = std::max(worst_dbv, std::abs(rows[r].d_bv - 1.0));
        if (r > 0 && !(rows[r].proj_upper < rows[r - 1].proj_upper)) {
            decreasing = false;
        }
    }
    report.summary = {{"proj_upper_decreasing", decreasing ? 1.0 : 0.0},
                      {"max_abs_dbv_minus_1", worst_dbv}};
    report.plot_kind = PlotKind::loglog;
    report.x_label = "m";
    report.y_label = "distance";
    report.series.push_back({"proj upper bound", mx, upper, false});
    report.series.push_back({"d_BV", mx, dbv, false});
    return report;
}

ExperimentReport run_modcont(const ExperimentConfig& cfg) {
    check_eps0(cfg.eps0);
    const Curve base = resolve_curve(cfg, "sine");
    ModContConfig mc;
    mc.eps0 = cfg.eps0;
    mc.alpha = cfg.alpha.value_or(1.0);
    mc.ball_radius = cfg.ball_radius;
    mc.c1bar = cfg.c1bar;
    mc.c2bar = cfg.c2bar;
    mc.epsilons = cfg.epsilons.empty() ? std::vector<double>{0.5, 0.6, 0.7, 0.8, 0.9, 0.95}
                                       : cfg.epsilons;
    mc.lambdas = cfg.lambdas.empty() ? log_uniform_draws(cfg.seed, cfg.lambda_count, 1e-9, 1.0)
                                     : cfg.lambdas;
    if (cfg.levels >= 1) {
        mc.signature_levels = std::min(cfg.levels, 6);
    }
    const ModContReport result = modcont_experiment(base, mc);

    ExperimentReport report;
    report.title = "Modulus of continuity of the inverse";
    report.columns = {"epsilon", "delta_theorem", "delta_empirical", "dc1"};
    std::vector<double> eps;
    std::vector<double> theorem;
    std::vector<double> empirical;
    double holds = 1.0;
    for (const auto& row : result.rows) {
        report.rows.push_back({row.epsilon, row.delta_theorem, row.delta_empirical, row.dc1});
        eps.push_back(row.epsilon);
        theorem.push_back(row.delta_theorem);
        empirical.push_back(row.delta_empirical);
        if (!row.holds) {
            holds = 0.0;
        }
    }
    report.summary = {{"perturbations", static_cast<double>(result.perturbations.size())},
                      {"skipped", static_cast<double>(result.skipped_lambdas.size())},
                      {"holds", holds}};
    report.plot_kind = PlotKind::frontier;
    report.x_label = "epsilon";
    report.y_label = "delta";
    report.series.push_back({"delta (theorem)", eps, theorem, false});
    report.series.push_back({"delta (empirical)", eps, empirical, true});
    std::vector<double> px;
    std::vector<double> py;
    for (const auto& p : result.perturbations) {
        px.push_back(p.d_c1);
        py.push_back(p.proj_upper);
    }
    report.series.push_back({"perturbations", px, py, true});
    return report;
}

ExperimentReport run_fastdecay(const ExperimentConfig& cfg) {
    check_eps0(cfg.eps0);
    const std::vector<long> ns = cfg.n_list.empty() ? std::vector<long>{1000, 10000} : cfg.n_list;
    if (cfg.grid < 2) {
        throw ConfigError("--grid must be at least 2");
    }
    const FastDecayReport result = check_fast_decay(ns, cfg.eps0, cfg.grid);

    ExperimentReport report;
    report.title = "Kernel decay away from the mode";
    report.columns = {"n", "epsilon0", "worst_ratio", "violations"};
    std::vector<double> nx;
    std::vector<double> ratio;
    double total = 0.0;
    for (const auto& row : result.rows) {
        report.rows.push_back({static_cast<double>(row.n), row.eps0, row.worst_ratio,
                               static_cast<double>(row.violations)});
        nx.push_back(static_cast<double>(row.n));
        ratio.push_back(row.worst_ratio);
        total += static_cast<double>(row.violations);
    }
    report.summary = {{"total_violations", total},
                      {"empirical_n0", static_cast<double>(result.empirical_n0)}};
    report.plot_kind = PlotKind::loglog;
    report.x_label = "n";
    report.y_label = "max rho / envelope";
    report.series.push_back({"worst ratio", nx, ratio, true});
    return report;
}

ExperimentReport run_crosscheck(const ExperimentConfig& cfg) {
    if (cfg.levels < 1 || cfg.levels > 12) {
        throw ConfigError("--levels must lie in 1..12");
    }
    if (cfg.vertices < 2) {
        throw ConfigError("--vertices must be at least 2");
    }
    const Curve curve = resolve_curve(cfg, "monomial");
    const CoeffTable table = build_table(curve, cfg.levels - 1, cfg.quad);
    const TruncatedSignature sig =
        chen_truncated_signature(sample_polyline(curve, cfg.vertices), cfg.levels);
    const CrossCheckReport check = cross_check(table, sig, cfg.levels, cfg.tolerance);

    ExperimentReport report;
    report.title = "Quadrature table against Chen's identity";
    report.columns = {"j", "k", "l", "table", "chen", "rel_err"};
    std::vector<double> level;
    std::vector<double> rel;
    for (const auto& row : check.rows) {
        report.rows.push_back({static_cast<double>(row.j), static_cast<double>(row.k),
                               static_cast<double>(row.l), row.table_value, row.chen_value,
                               row.rel_error});
        level.push_back(row.k + row.l + 1.0);
        rel.push_back(row.rel_error);
    }
    report.summary = {{"max_rel_error", check.max_rel_error},
                      {"within_tolerance", check.within_tolerance ? 1.0 : 0.0}};
    report.plot_kind = PlotKind::loglog;
    report.x_label = "level";
    report.y_label = "relative deviation";
    report.series.push_back({"rel_err", level, rel, true});
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    if (cfg.command == "rate") {
        report = run_rate_experiment(cfg);
    } else if (cfg.command == "invert") {
        report = run_invert(cfg);
    } else if (cfg.command == "trace") {
        report = run_trace(cfg);
    } else if (cfg.command == "length") {
        report = run_length(cfg);
    } else if (cfg.command == "norms") {
        report = run_norms(cfg);
    } else if (cfg.command == "discont") {
        report = run_discont(cfg);
    } else if (cfg.command == "modcont") {
        report = run_modcont(cfg);
    } else if (cfg.command == "fastdecay") {
        report = run_fastdecay(cfg);
    } else if (cfg.command == "crosscheck") {
        report = run_crosscheck(cfg);
    } else {
        throw ConfigError("unknown experiment '" + cfg.command + "'");
    }
    report.config_echo = config_echo(cfg);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace sigaxial
