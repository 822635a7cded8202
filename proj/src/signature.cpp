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

#include "sigaxial/signature.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sigaxial/errors.hpp"
#include "sigaxial/parallel.hpp"
#include "sigaxial/quadrature.hpp"

namespace sigaxial {

namespace {

std::string cell_name(int j, int k, int l) {
    return "(j=" + std::to_string(j) + ", k=" + std::to_string(k) + ", l=" + std::to_string(l) +
           ")";
}

// Panel cut points for one refinement pass.
std::vector<double> kernel_cuts(const Curve& curve, KernelIndex idx, int points, int refinement,
                                int pass) {
    std::vector<double> cuts;
    if (idx.n() == 0) {
        for (int p = 0; p <= refinement; ++p) {
            cuts.push_back(static_cast<double>(p) / refinement);
        }
    } else {
        const double mode = rho_mode(idx);
        const double half = std::max(6.0 * rho_stddev(idx), 1.0 / points);
        const double lo = std::max(0.0, mode - half);
        const double hi = std::min(1.0, mode + half);
        const double width = (hi - lo) / refinement;
        for (int p = 0; p <= refinement; ++p) {
            cuts.push_back(lo + (hi - lo) * p / refinement);
        }
        // geometric panels outward, doubling
        double step = width;
        for (double pos = lo; pos > 0.0; step *= 2.0) {
            pos = std::max(0.0, pos - step);
            cuts.push_back(pos);
        }
        step = width;
        for (double pos = hi; pos < 1.0; step *= 2.0) {
            pos = std::min(1.0, pos + step);
            cuts.push_back(pos);
        }
    }
    std::vector<double> fixed;
    for (double b : curve.breakpoints()) {
        if (b > 0.0 && b < 1.0) {
            fixed.push_back(b);
        }
    }
    for (double p : curve.singular_points()) {
        if (p > 0.0 && p < 1.0) {
            fixed.push_back(p);
        }
    }
    // A regular cut just beside a kink leaves a wide panel with a near-singular end;
    // clear a half-panel around every fixed point so the graded cuts take over.
    std::sort(cuts.begin(), cuts.end());
    double min_gap = 1.0;
    for (std::size_t c = 1; c < cuts.size(); ++c) {
        if (cuts[c] > cuts[c - 1]) {
            min_gap = std::min(min_gap, cuts[c] - cuts[c - 1]);
        }
    }
    std::erase_if(cuts, [&](double c) {
        return c > 0.0 && c < 1.0 && std::any_of(fixed.begin(), fixed.end(), [&](double f) {
                   return c != f && std::abs(c - f) < 0.5 * min_gap;
               });
    });
    cuts.insert(cuts.end(), fixed.begin(), fixed.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    if (!curve.singular_points().empty()) {
        const int levels = 10 + 2 * pass;
        std::vector<double> graded;
        for (double p : curve.singular_points()) {
            auto it = std::lower_bound(cuts.begin(), cuts.end(), p);
            if (it == cuts.end() || *it != p) {
                continue;
            }
            if (it != cuts.begin()) {
                append_graded_cuts(graded, *(it - 1), p, p, levels);
            }
            if (it + 1 != cuts.end()) {
                append_graded_cuts(graded, p, *(it + 1), p, levels);
            }
        }
        cuts.insert(cuts.end(), graded.begin(), graded.end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    }
    return cuts;
}

void check_component(const Curve& curve, int j) {
    if (j == curve.axial_index()) {
        throw ConfigError("axial coefficients (j = i) are analytic; no quadrature needed");
    }
    if (j < 1 || j > curve.dimension()) {
        throw ConfigError("component j = " + std::to_string(j) + " outside 1.." +
                          std::to_string(curve.dimension()));
    }
}

}  // namespace

CoefficientValue scaled_coefficient(const Curve& curve, int j, KernelIndex idx,
                                    const QuadConfig& cfg) {
    check_component(curve, j);
    if (cfg.points < 2 || cfg.refinement < 1 || !(cfg.tolerance > 0.0) || cfg.max_refinements < 1) {
        throw ConfigError("quadrature config needs points >= 2, refinement >= 1, tolerance > 0");
    }
    const double log_constant = log_rho_constant(idx);
    const int k = idx.k;
    const int l = idx.l;
    auto integrand = [&](double s) {
        double log_weight = log_rho_fast(log_constant, k, l, std::log(s), std::log1p(-s));
        return std::exp(log_weight) * curve.derivative(j, s);
    };

    double previous = std::numeric_limits<double>::quiet_NaN();
    int refinement = cfg.refinement;
    for (int pass = 0; pass <= cfg.max_refinements; ++pass, refinement *= 2) {
        const std::vector<double> cuts = kernel_cuts(curve, idx, cfg.points, refinement, pass);
        const double value = integrate_panels(integrand, cuts, cfg.points);
        if (pass > 0) {
            const double diff = std::abs(value - previous);
            if (diff <= cfg.tolerance * std::max(1.0, std::abs(value))) {
                return {value, diff};
            }
        }
        if (pass == cfg.max_refinements) {
            throw QuadratureError("quadrature did not converge for " + cell_name(j, k, l),
                                  previous, value);
        }
        previous = value;
    }
    throw QuadratureError("quadrature did not converge for " + cell_name(j, k, l), previous,
                          previous);
}

CoeffTable::CoeffTable(int dimension, int axial_index, double axial_speed, int truncation)
    : dimension_(dimension),
      axial_index_(axial_index),
      axial_speed_(axial_speed),
      truncation_(truncation),
      sup_bound_(std::numeric_limits<double>::quiet_NaN()) {
    if (dimension_ < 2) {
        throw ConfigError("table dimension must be at least 2");
    }
    if (axial_index_ < 1 || axial_index_ > dimension_) {
        throw ConfigError("table axial index outside 1..d");
    }
    if (!(axial_speed_ > 0.0) || !std::isfinite(axial_speed_)) {
        throw ConfigError("table axial speed C0 must be positive and finite");
    }
    if (truncation_ < 0) {
        throw ConfigError("table truncation must be nonnegative");
    }
    const auto n1 = static_cast<std::size_t>(truncation_) + 1;
    cells_per_component_ = n1 * (n1 + 1) / 2;
    values_.assign(cells_per_component_ * static_cast<std::size_t>(dimension_ - 1), 0.0);
}

std::size_t CoeffTable::offset(int j, int k, int l) const {
    if (j < 1 || j > dimension_ || j == axial_index_) {
        throw ConfigError("table component j = " + std::to_string(j) + " is not a stored component");
    }
    if (k < 0 || l < 0 || k + l > truncation_) {
        throw ConfigError("table cell " + cell_name(j, k, l) + " outside truncation N = " +
                          std::to_string(truncation_));
    }
    const auto slot = static_cast<std::size_t>(j < axial_index_ ? j - 1 : j - 2);
    const auto n = static_cast<std::size_t>(k + l);
    return slot * cells_per_component_ + n * (n + 1) / 2 + static_cast<std::size_t>(k);
}

double CoeffTable::at(int j, int k, int l) const {
    if (j == axial_index_) {
        if (k < 0 || l < 0 || k + l > truncation_) {
            throw ConfigError("table cell " + cell_name(j, k, l) + " outside truncation");
        }
        return axial_speed_;
    }
    return values_[offset(j, k, l)];
}

void CoeffTable::set(int j, int k, int l, double value) {
    values_[offset(j, k, l)] = value;
}

CoeffTable build_table(const Curve& curve, int truncation, const QuadConfig& cfg) {
    if (truncation < 1) {
        throw ConfigError("table truncation N must be at least 1");
    }
    CoeffTable table(curve.dimension(), curve.axial_index(), curve.axial_speed(), truncation);

    std::vector<int> components;
    for (int j = 1; j <= curve.dimension(); ++j) {
        if (j != curve.axial_index()) {
            components.push_back(j);
        }
    }
    const std::size_t per = table.cells_per_component();
    std::vector<CoefficientValue> results(per * components.size());
    parallel_for(results.size(), [&](std::size_t index) {
        const int j = components[index / per];
        const auto cell = index % per;
        // invert cell = n(n+1)/2 + k
        auto n = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(cell) + 1.0) - 1.0) / 2.0);
        while (n * (n + 1) / 2 > cell) {
            --n;
        }
        while ((n + 1) * (n + 2) / 2 <= cell) {
            ++n;
        }
        const int k = static_cast<int>(cell - n * (n + 1) / 2);
        const int l = static_cast<int>(n) - k;
        try {
            results[index] = scaled_coefficient(curve, j, KernelIndex(k, l), cfg);
        } catch (const QuadratureError& e) {
            throw QuadratureError(std::string("table cell ") + cell_name(j, k, l) + ": " + e.what(),
                                  e.previous(), e.last());
        }
    });

    double achieved = 0.0;
    for (std::size_t c = 0; c < components.size(); ++c) {
        for (int n = 0; n <= truncation; ++n) {
            for (int k = 0; k <= n; ++k) {
                const auto& r = results[c * per + static_cast<std::size_t>(n) * (n + 1) / 2 +
                                        static_cast<std::size_t>(k)];
                table.set(components[c], k, n - k, r.value);
                achieved = std::max(achieved, r.error);
            }
        }
    }
    table.set_tolerance_achieved(achieved);

    double sup = 0.0;
    constexpr int sup_grid = 10001;
    for (int j : components) {
        for (int m = 0; m < sup_grid; ++m) {
            sup = std::max(sup, std::abs(curve.derivative(j, static_cast<double>(m) / (sup_grid - 1))));
        }
    }
    table.set_sup_bound(sup);
    return table;
}

// ---------------------------------------------------------------------------
// Truncated tensor series

TruncatedSignature::TruncatedSignature(int dimension, int truncation)
    : dimension_(dimension), truncation_(truncation) {
    if (dimension_ < 1) {
        throw ConfigError("signature dimension must be positive");
    }
    if (truncation_ < 0) {
        throw ConfigError("signature truncation must be nonnegative");
    }
    levels_.resize(static_cast<std::size_t>(truncation_) + 1);
    std::size_t size = 1;
    for (auto& level : levels_) {
        level.assign(size, 0.0);
        size *= static_cast<std::size_t>(dimension_);
    }
    levels_[0][0] = 1.0;
}

double TruncatedSignature::coefficient(std::span<const int> word) const {
    if (word.size() > static_cast<std::size_t>(truncation_)) {
        throw ConfigError("word length " + std::to_string(word.size()) + " exceeds truncation " +
                          std::to_string(truncation_));
    }
    std::size_t index = 0;
    for (int letter : word) {
        if (letter < 1 || letter > dimension_) {
            throw ConfigError("word letter outside 1..d");
        }
        index = index * static_cast<std::size_t>(dimension_) + static_cast<std::size_t>(letter - 1);
    }
    return levels_[word.size()][index];
}

void TruncatedSignature::append_segment(std::span<const double> increment) {
    if (increment.size() != static_cast<std::size_t>(dimension_)) {
        throw ConfigError("segment increment has the wrong dimension");
    }
    const auto d = static_cast<std::size_t>(dimension_);
    std::vector<double> current;
    std::vector<double> next;
    // Horner form of sum_m A_m (x) increment^{n-m} / (n-m)!, highest level first so the
    // lower levels read below are still the old ones.
    for (int n = truncation_; n >= 1; --n) {
        current.assign(increment.begin(), increment.end());
        const double a0 = levels_[0][0] / n;
        for (double& v : current) {
            v *= a0;
        }
        for (int m = 1; m < n; ++m) {
            const auto& am = levels_[static_cast<std::size_t>(m)];
            const double inv = 1.0 / (n - m);
            next.resize(current.size() * d);
            for (std::size_t w = 0; w < current.size(); ++w) {
                const double base = (current[w] + am[w]) * inv;
                double* out = next.data() + w * d;
                for (std::size_t c = 0; c < d; ++c) {
                    out[c] = base * increment[c];
                }
            }
            current.swap(next);
        }
        auto& an = levels_[static_cast<std::size_t>(n)];
        for (std::size_t w = 0; w < an.size(); ++w) {
            an[w] += current[w];
        }
    }
}

TruncatedSignature operator*(const TruncatedSignature& a, const TruncatedSignature& b) {
    if (a.dimension_ != b.dimension_ || a.truncation_ != b.truncation_) {
        throw ConfigError("tensor product of signatures with different shapes");
    }
    TruncatedSignature out(a.dimension_, a.truncation_);
    out.levels_[0][0] = 0.0;
    for (int n = 0; n <= a.truncation_; ++n) {
        auto& target = out.levels_[static_cast<std::size_t>(n)];
        for (int p = 0; p <= n; ++p) {
            const auto& left = a.levels_[static_cast<std::size_t>(p)];
            const auto& right = b.levels_[static_cast<std::size_t>(n - p)];
            const std::size_t width = right.size();
            for (std::size_t x = 0; x < left.size(); ++x) {
                const double lv = left[x];
                if (lv == 0.0) {
                    continue;
                }
                double* out_row = target.data() + x * width;
                for (std::size_t y = 0; y < width; ++y) {
                    out_row[y] += lv * right[y];
                }
            }
        }
    }
    return out;
}

TruncatedSignature segment_signature(std::span<const double> increment, int truncation) {
    TruncatedSignature sig(static_cast<int>(increment.size()), truncation);
    sig.append_segment(increment);
    return sig;
}

TruncatedSignature chen_truncated_signature(const Polyline& path, int truncation) {
    if (truncation < 1) {
        throw ConfigError("signature truncation must be at least 1");
    }
    if (path.vertices.size() < 2) {
        throw ConfigError("signature of an empty polyline (fewer than two vertices)");
    }
    const auto d = path.vertices.front().size();
    TruncatedSignature sig(static_cast<int>(d), truncation);
    std::vector<double> increment(d);
    for (std::size_t m = 1; m < path.vertices.size(); ++m) {
        if (path.vertices[m].size() != d) {
            throw ConfigError("polyline vertices have inconsistent dimensions");
        }
        for (std::size_t c = 0; c < d; ++c) {
            increment[c] = path.vertices[m][c] - path.vertices[m - 1][c];
        }
        sig.append_segment(increment);
    }
    return sig;
}

double extract_axial_coefficient(const TruncatedSignature& sig, int i, int j, int k, int l) {
    if (k < 0 || l < 0) {
        throw ConfigError("axial word exponents must be nonnegative");
    }
    if (k + l + 1 > sig.truncation()) {
        throw ConfigError("axial word level " + std::to_string(k + l + 1) +
                          " exceeds signature truncation " + std::to_string(sig.truncation()));
    }
    std::vector<int> word(static_cast<std::size_t>(k + l + 1), i);
    word[static_cast<std::size_t>(k)] = j;
    return sig.coefficient(word);
}

CrossCheckReport cross_check(const CoeffTable& table, const TruncatedSignature& sig,
                             int max_level, double tolerance) {
    if (table.dimension() != sig.dimension()) {
        throw ConfigError("cross-check between table and signature of different dimension");
    }
    if (max_level < 1 || max_level > std::min(table.truncation() + 1, sig.truncation())) {
        throw ConfigError("cross-check level must lie in 1..min(N_table + 1, N_signature)");
    }
    CrossCheckReport report;
    const int i = table.axial_index();
    const double log_c0 = std::log(table.axial_speed());
    for (int j = 1; j <= table.dimension(); ++j) {
        if (j == i) {
            continue;
        }
        for (int n = 0; n + 1 <= max_level; ++n) {
            for (int k = 0; k <= n; ++k) {
                const int l = n - k;
                CrossCheckRow row{j, k, l, table.at(j, k, l), 0.0, 0.0};
                const double raw = extract_axial_coefficient(sig, i, j, k, l);
                row.chen_value = raw * std::exp(std::lgamma(n + 2.0) - n * log_c0);
                const double scale =
                    std::max({std::abs(row.table_value), std::abs(row.chen_value), 1e-12});
                row.rel_error = std::abs(row.table_value - row.chen_value) / scale;
                if (row.rel_error > report.max_rel_error || report.rows.empty()) {
                    report.max_rel_error = std::max(report.max_rel_error, row.rel_error);
                    report.worst_j = j;
                    report.worst_k = k;
                    report.worst_l = l;
                }
                report.rows.push_back(row);
            }
        }
    }
    report.within_tolerance = report.max_rel_error <= tolerance;
    return report;
}

// ---------------------------------------------------------------------------
// Interchange

double SignedLog::value() const {
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

SignedLog raw_from_scaled(double scaled, int k, int l, double axial_speed) {
    if (scaled == 0.0) {
        return {0, 0.0};
    }
    const int n = k + l;
    return {scaled > 0.0 ? 1 : -1,
            std::log(std::abs(scaled)) - std::lgamma(n + 2.0) + n * std::log(axial_speed)};
}

double scaled_from_raw(SignedLog raw, int k, int l, double axial_speed) {
    if (raw.sign == 0) {
        return 0.0;
    }
    const int n = k + l;
    return raw.sign * std::exp(std::lgamma(n + 2.0) + raw.log_abs - n * std::log(axial_speed));
}

namespace {

nlohmann::json table_header(const CoeffTable& table, bool raw) {
    nlohmann::json doc;
    doc["d"] = table.dimension();
    doc["i"] = table.axial_index();
    doc["C0"] = table.axial_speed();
    doc["N"] = table.truncation();
    doc["scaled"] = !raw;
    doc["tol"] = table.tolerance_achieved();
    if (std::isfinite(table.sup_bound())) {
        doc["sup"] = table.sup_bound();
    }
    return doc;
}

template <class F>
void for_each_cell(const CoeffTable& table, F&& f) {
    for (int j = 1; j <= table.dimension(); ++j) {
        if (j == table.axial_index()) {
            continue;
        }
        for (int n = 0; n <= table.truncation(); ++n) {
            for (int k = 0; k <= n; ++k) {
                f(j, k, n - k);
            }
        }
    }
}

int json_int(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_number_integer()) {
        throw ConfigError(std::string("table file: field '") + key + "' must be an integer");
    }
    return obj.at(key).get<int>();
}

double json_finite(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw ConfigError(std::string("table file: field '") + key + "' must be a number");
    }
    double v = obj.at(key).get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(std::string("table file: field '") + key + "' is not finite");
    }
    return v;
}

}  // namespace

void emit_table(std::ostream& out, const CoeffTable& table, bool raw) {
    nlohmann::json doc = table_header(table, raw);
    nlohmann::json cells = nlohmann::json::array();
    for_each_cell(table, [&](int j, int k, int l) {
        nlohmann::json cell{{"j", j}, {"k", k}, {"l", l}};
        const double v = table.at(j, k, l);
        if (raw) {
            SignedLog r = raw_from_scaled(v, k, l, table.axial_speed());
            cell["sign"] = r.sign;
            cell["loga"] = r.log_abs;
        } else {
            cell["v"] = v;
        }
        cells.push_back(std::move(cell));
    });
    doc["cells"] = std::move(cells);
    out << doc.dump() << '\n';
}

CoeffTable ingest_table(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("table file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("table file must hold a JSON object");
    }
    const int d = json_int(doc, "d");
    const int i = json_int(doc, "i");
    const double c0 = json_finite(doc, "C0");
    const int truncation = json_int(doc, "N");
    if (!(c0 > 0.0)) {
        throw ConfigError("table file: C0 must be positive");
    }
    if (!doc.contains("scaled") || !doc.at("scaled").is_boolean()) {
        throw ConfigError("table file: field 'scaled' must be a boolean");
    }
    const bool scaled = doc.at("scaled").get<bool>();
    if (d < 2 || i < 1 || i > d || truncation < 0) {
        throw ConfigError("table file: need d >= 2, 1 <= i <= d, N >= 0");
    }
    CoeffTable table(d, i, c0, truncation);
    if (doc.contains("tol")) {
        table.set_tolerance_achieved(json_finite(doc, "tol"));
    }
    if (doc.contains("sup")) {
        table.set_sup_bound(json_finite(doc, "sup"));
    }
    if (!doc.contains("cells") || !doc.at("cells").is_array()) {
        throw ConfigError("table file: 'cells' must be an array");
    }
    std::vector<bool> seen(table.cells_per_component() * static_cast<std::size_t>(d - 1), false);
    std::size_t filled = 0;
    for (const auto& cell : doc.at("cells")) {
        if (!cell.is_object()) {
            throw ConfigError("table file: every cell must be an object");
        }
        const int j = json_int(cell, "j");
        const int k = json_int(cell, "k");
        const int l = json_int(cell, "l");
        if (j < 1 || j > d || j == i || k < 0 || l < 0 || k + l > truncation) {
            throw ConfigError("table file: cell " + cell_name(j, k, l) + " out of range");
        }
        double value = 0.0;
        if (scaled) {
            value = json_finite(cell, "v");
        } else {
            const int sign = json_int(cell, "sign");
            if (sign < -1 || sign > 1) {
                throw ConfigError("table file: sign must be -1, 0 or 1");
            }
            value = scaled_from_raw({sign, json_finite(cell, "loga")}, k, l, c0);
            if (!std::isfinite(value)) {
                throw ConfigError("table file: cell " + cell_name(j, k, l) +
                                  " rescales to a non-finite value");
            }
        }
        const auto slot = static_cast<std::size_t>(j < i ? j - 1 : j - 2) *
                              table.cells_per_component() +
                          static_cast<std::size_t>(k + l) * (k + l + 1) / 2 +
                          static_cast<std::size_t>(k);
        if (seen[slot]) {
            throw ConfigError("table file: duplicate cell " + cell_name(j, k, l));
        }
        seen[slot] = true;
        ++filled;
        table.set(j, k, l, value);
    }
    if (filled != seen.size()) {
        throw ConfigError("table file: " + std::to_string(seen.size() - filled) +
                          " cells missing for the declared d and N");
    }
    return table;
}

void emit_table_csv(std::ostream& out, const CoeffTable& table, bool raw) {
    out << "# d=" << table.dimension() << " i=" << table.axial_index()
        << " C0=" << nlohmann::json(table.axial_speed()).dump() << " N=" << table.truncation()
        << " scaled=" << (raw ? "false" : "true") << '\n';
    out << (raw ? "j,k,l,sign,loga\n" : "j,k,l,v\n");
    for_each_cell(table, [&](int j, int k, int l) {
        const double v = table.at(j, k, l);
        out << j << ',' << k << ',' << l << ',';
        if (raw) {
            SignedLog r = raw_from_scaled(v, k, l, table.axial_speed());
            out << r.sign << ',' << nlohmann::json(r.log_abs).dump() << '\n';
        } else {
            out << nlohmann::json(v).dump() << '\n';
        }
    });
}

}  // namespace sigaxial
