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
#include <iosfwd>
#include <span>
#include <vector>

#include "sigaxial/beta_kernel.hpp"
#include "sigaxial/curve.hpp"

namespace sigaxial {

// Mode-centred composite Gauss-Legendre settings for the axial coefficient integrals.
struct QuadConfig {
    int points = 20;           // nodes per panel
    int refinement = 4;        // core subpanels at the first pass; doubled on each retry
    double tolerance = 1e-12;  // relative to max(1, |value|)
    int max_refinements = 6;
};

struct CoefficientValue {
    double value = 0.0;
    double error = 0.0;  // |last - previous| refinement difference
};

/// Scaled axial coefficient (k+l+1)! S^{(j;i)}_{k,l} / C0^{k+l}, which equals the Beta
/// average  int_0^1 rho_{k,l}(s) x_j'(s) ds.  The core panel is centred on k/n with
/// half-width max(6 sigma, 1/points); geometric panels fill out to the boundaries.
/// Throws ConfigError for j == axial index and QuadratureError when refinement does not
/// settle within cfg.max_refinements doublings.
CoefficientValue scaled_coefficient(const Curve& curve, int j, KernelIndex idx,
                                    const QuadConfig& cfg = {});

/// Scaled coefficients Sh^{(j;i)}_{k,l} for every j != i and k + l <= N.
/// The axial cells (j == i) are analytic: their scaled value is C0.
class CoeffTable {
public:
    CoeffTable(int dimension, int axial_index, double axial_speed, int truncation);

    int dimension() const noexcept { return dimension_; }
    int axial_index() const noexcept { return axial_index_; }
    double axial_speed() const noexcept { return axial_speed_; }
    int truncation() const noexcept { return truncation_; }

    double at(int j, int k, int l) const;
    void set(int j, int k, int l, double value);

    // Largest |quadrature refinement difference| over all cells.
    double tolerance_achieved() const noexcept { return tolerance_achieved_; }
    void set_tolerance_achieved(double tol) noexcept { tolerance_achieved_ = tol; }
    // Recorded sup |x_j'| bound (NaN when unknown).
    double sup_bound() const noexcept { return sup_bound_; }
    void set_sup_bound(double bound) noexcept { sup_bound_ = bound; }

    std::size_t cells_per_component() const noexcept { return cells_per_component_; }

private:
    std::size_t offset(int j, int k, int l) const;

    int dimension_;
    int axial_index_;
    double axial_speed_;
    int truncation_;
    std::size_t cells_per_component_;
    std::vector<double> values_;
    double tolerance_achieved_ = 0.0;
    double sup_bound_;
};

CoeffTable build_table(const Curve& curve, int truncation, const QuadConfig& cfg = {});

/// Dense truncated tensor series: level n holds d^n coefficients, word (w_1..w_n) with
/// letters 1..d stored at index sum (w_m - 1) d^{n-m}.
class TruncatedSignature {
public:
    // Identity element (1, 0, 0, ...).
    TruncatedSignature(int dimension, int truncation);

    int dimension() const noexcept { return dimension_; }
    int truncation() const noexcept { return truncation_; }

    std::span<double> level(int n) { return levels_[static_cast<std::size_t>(n)]; }
    std::span<const double> level(int n) const { return levels_[static_cast<std::size_t>(n)]; }

    // Coefficient of a word of letters in 1..d; the empty word is level 0.
    double coefficient(std::span<const int> word) const;

    // this <- this (x) exp(increment), truncated.
    void append_segment(std::span<const double> increment);

    friend TruncatedSignature operator*(const TruncatedSignature& a, const TruncatedSignature& b);

private:
    int dimension_;
    int truncation_;
    std::vector<std::vector<double>> levels_;
};

TruncatedSignature segment_signature(std::span<const double> increment, int truncation);
TruncatedSignature chen_truncated_signature(const Polyline& path, int truncation);

// Raw coefficient of the word i^k j i^l (letters 1-based).
double extract_axial_coefficient(const TruncatedSignature& sig, int i, int j, int k, int l);

struct CrossCheckRow {
    int j = 0;
    int k = 0;
    int l = 0;
    double table_value = 0.0;
    double chen_value = 0.0;  // rescaled to the table's unit
    double rel_error = 0.0;
};

struct CrossCheckReport {
    std::vector<CrossCheckRow> rows;
    double max_rel_error = 0.0;
    int worst_j = 0;
    int worst_k = 0;
    int worst_l = 0;
    bool within_tolerance = true;
};

CrossCheckReport cross_check(const CoeffTable& table, const TruncatedSignature& sig,
                             int max_level, double tolerance);

// Table interchange. Scaled cells use {"v": value}; raw cells use {"sign", "loga"} with
// raw = sign * exp(loga).
void emit_table(std::ostream& out, const CoeffTable& table, bool raw = false);
CoeffTable ingest_table(std::istream& in);
void emit_table_csv(std::ostream& out, const CoeffTable& table, bool raw = false);

// Conversions between the scaled unit and the (sign, log|S|) raw representation.
struct SignedLog {
    int sign = 0;  // -1, 0, +1
    double log_abs = 0.0;

    double value() const;
};
SignedLog raw_from_scaled(double scaled, int k, int l, double axial_speed);
double scaled_from_raw(SignedLog raw, int k, int l, double axial_speed);

}  // namespace sigaxial
