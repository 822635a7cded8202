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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "sigaxial/errors.hpp"
#include "sigaxial/signature.hpp"

using namespace sigaxial;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int m = 2; m <= n; ++m) f *= m;
    return f;
}

Polyline make_path(std::vector<std::vector<double>> vertices) {
    Polyline p;
    p.dimension = static_cast<int>(vertices.front().size());
    for (std::size_t m = 0; m < vertices.size(); ++m) {
        p.grid.push_back(vertices.size() == 1 ? 0.0 : static_cast<double>(m) / (vertices.size() - 1));
    }
    p.vertices = std::move(vertices);
    return p;
}

std::vector<int> word_of(std::size_t index, int level, int d) {
    std::vector<int> word(static_cast<std::size_t>(level));
    for (int m = level - 1; m >= 0; --m) {
        word[static_cast<std::size_t>(m)] = static_cast<int>(index % d) + 1;
        index /= d;
    }
    return word;
}

}  // namespace

TEST_CASE("scaled coefficients against Beta moments") {
    const Curve lin = make_preset("linear", {{"slope", 1.0}});
    const Curve zero = make_preset("linear", {{"slope", 0.0}});
    const Curve mono = make_preset("monomial", {{"m", 1}});
    const Curve quad = make_preset("monomial", {{"m", 2}});
    for (int k : {0, 1, 7, 40, 150}) {
        for (int l : {0, 3, 99}) {
            const KernelIndex idx(k, l);
            const double n = k + l;
            CHECK(scaled_coefficient(lin, 2, idx).value == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(scaled_coefficient(zero, 2, idx).value == 0.0);
            CHECK(scaled_coefficient(mono, 2, idx).value ==
                  doctest::Approx((k + 1.0) / (n + 2.0)).epsilon(1e-12));
            CHECK(scaled_coefficient(quad, 2, idx).value ==
                  doctest::Approx((k + 1.0) * (k + 2.0) / ((n + 2.0) * (n + 3.0))).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(scaled_coefficient(lin, 1, KernelIndex(1, 1)), ConfigError);
}

TEST_CASE("coefficient at a square-root kink converges") {
    const Curve kink = make_preset("holder_kink", {{"alpha", 0.5}, {"x0", 0.5}});
    // E|B - 1/2|^{1/2} for B ~ Beta(21, 21) by fine midpoint sums of the density
    const KernelIndex idx(20, 20);
    const int cells = 2000000;
    double acc = 0.0;
    for (int m = 0; m < cells; ++m) {
        const double s = (m + 0.5) / cells;
        acc += std::exp(log_rho(idx, s)) * std::sqrt(std::abs(s - 0.5));
    }
    acc /= cells;
    const CoefficientValue v = scaled_coefficient(kink, 2, idx);
    CHECK(v.value == doctest::Approx(acc).epsilon(1e-7));
    CHECK(v.error <= 1e-12);
}

TEST_CASE("quadrature failure carries both refinement values") {
    const Curve kink = make_preset("holder_kink", {{"alpha", 0.5}, {"x0", 0.5}});
    QuadConfig cfg;
    cfg.tolerance = 1e-300;
    cfg.max_refinements = 1;
    cfg.points = 4;
    try {
        scaled_coefficient(kink, 2, KernelIndex(5, 5), cfg);
        FAIL("expected a QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.previous()));
        CHECK(std::isfinite(e.last()));
    }
}

TEST_CASE("tables") {
    SUBCASE("linear") {
        const CoeffTable t = build_table(make_preset("linear", {{"slope", 1.0}}), 5);
        int cells = 0;
        for (int n = 0; n <= 5; ++n) {
            for (int k = 0; k <= n; ++k) {
                CHECK(t.at(2, k, n - k) == doctest::Approx(1.0).epsilon(1e-12));
                ++cells;
            }
        }
        CHECK(cells == 21);
        CHECK(t.at(1, 2, 1) == 1.0);
    }
    SUBCASE("monomial") {
        const CoeffTable t = build_table(make_preset("monomial", {{"m", 1}}), 2);
        CHECK(t.at(2, 0, 0) == doctest::Approx(0.5));
        CHECK(t.at(2, 1, 0) == doctest::Approx(2.0 / 3.0));
        CHECK(t.at(2, 0, 1) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("helix") {
        const CoeffTable t = build_table(make_preset("helix", {{"n", 1}}), 3);
        CHECK(t.at(2, 0, 0) == doctest::Approx(0.0).scale(1.0));
        CHECK(t.at(3, 0, 0) == doctest::Approx(0.0).scale(1.0));
        // int rho_{1,0} cos(2 pi s) = int 2 s cos(2 pi s) ds = 0, and -sin gives 2 * (1 / (2 pi))
        CHECK(t.at(2, 1, 0) == doctest::Approx(1.0 / std::numbers::pi));
    }
    SUBCASE("stored values respect the sup bound") {
        const CoeffTable t = build_table(make_preset("sine", {{"amp", 0.7}}), 40);
        CHECK(t.sup_bound() == doctest::Approx(0.7).epsilon(1e-6));
        for (int n = 0; n <= 40; ++n) {
            for (int k = 0; k <= n; ++k) {
                CHECK(std::abs(t.at(2, k, n - k)) <= t.sup_bound() + 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(CoeffTable(2, 1, 0.0, 4), ConfigError);
    CHECK_THROWS_AS(CoeffTable(2, 3, 1.0, 4), ConfigError);
}

TEST_CASE("segment signature is the tensor exponential") {
    const std::vector<double> v{0.3, -1.2, 0.7};
    const TruncatedSignature sig = segment_signature(v, 5);
    for (int n = 0; n <= 5; ++n) {
        const auto level = sig.level(n);
        for (std::size_t w = 0; w < level.size(); ++w) {
            double expected = 1.0 / factorial(n);
            for (int letter : word_of(w, n, 3)) expected *= v[static_cast<std::size_t>(letter - 1)];
            CHECK(level[w] == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("constant path has the identity signature") {
    const TruncatedSignature sig = chen_truncated_signature(make_path({{1, 2}, {1, 2}, {1, 2}}), 4);
    CHECK(sig.level(0)[0] == 1.0);
    for (int n = 1; n <= 4; ++n) {
        for (double c : sig.level(n)) CHECK(c == 0.0);
    }
    CHECK_THROWS_AS(chen_truncated_signature(make_path({{0.5, 0.5}}), 3), ConfigError);
}

TEST_CASE("concatenation") {
    const std::vector<std::vector<double>> pts{{0, 0, 0}, {0.4, -0.1, 0.3}, {0.9, 0.6, -0.2},
                                               {1.1, 0.2, 0.5}, {2.0, 0.0, 0.1}};
    for (std::size_t cut = 1; cut + 1 < pts.size(); ++cut) {
        std::vector<std::vector<double>> left(pts.begin(), pts.begin() + cut + 1);
        std::vector<std::vector<double>> right(pts.begin() + cut, pts.end());
        const auto whole = chen_truncated_signature(make_path(pts), 5);
        const auto product =
            chen_truncated_signature(make_path(left), 5) * chen_truncated_signature(make_path(right), 5);
        for (int n = 0; n <= 5; ++n) {
            for (std::size_t w = 0; w < whole.level(n).size(); ++w) {
                CHECK(std::abs(whole.level(n)[w] - product.level(n)[w]) <= 1e-14);
            }
        }
    }
}

TEST_CASE("levels decay factorially in the l1 path length") {
    const Polyline p = sample_polyline(make_preset("helix", {{"n", 2}}), 400);
    double length = 0.0;
    for (std::size_t m = 1; m < p.size(); ++m) {
        for (int j = 0; j < 3; ++j) {
            length += std::abs(p.vertices[m][static_cast<std::size_t>(j)] -
                               p.vertices[m - 1][static_cast<std::size_t>(j)]);
        }
    }
    const auto sig = chen_truncated_signature(p, 8);
    for (int n = 1; n <= 8; ++n) {
        double l1 = 0.0;
        for (double c : sig.level(n)) l1 += std::abs(c);
        CHECK(l1 <= std::pow(length, n) / factorial(n) * (1.0 + 1e-12));
    }
}

TEST_CASE("axial words") {
    const double c0 = 1.7;
    const Polyline p = sample_polyline(make_preset("sine", {{"c0", c0}}), 50);
    const auto sig = chen_truncated_signature(p, 7);
    CHECK(sig.level(1)[0] == doctest::Approx(c0));
    for (int n = 0; n < 7; ++n) {
        for (int k = 0; k <= n; ++k) {
            CHECK(extract_axial_coefficient(sig, 1, 1, k, n - k) ==
                  doctest::Approx(std::pow(c0, n + 1) / factorial(n + 1)).epsilon(1e-12));
        }
    }
    const auto flat = chen_truncated_signature(make_path({{0, 0}, {0, 0}}), 4);
    CHECK(extract_axial_coefficient(flat, 1, 2, 1, 2) == 0.0);
}

TEST_CASE("cross-check against Chen") {
    SUBCASE("linear is exact") {
        const Curve c = make_preset("linear", {{"slope", 0.6}});
        const auto report =
            cross_check(build_table(c, 7), chen_truncated_signature(sample_polyline(c, 3), 8), 8, 1e-10);
        CHECK(report.max_rel_error < 1e-12);
        CHECK(report.within_tolerance);
        CHECK(report.rows.size() == 36);
    }
    SUBCASE("monomial, dense polyline") {
        const Curve c = make_preset("monomial", {{"m", 1}});
        const auto report = cross_check(build_table(c, 7),
                                        chen_truncated_signature(sample_polyline(c, 10000), 8), 8, 1e-6);
        CHECK(report.max_rel_error < 1e-6);
    }
    SUBCASE("mismatch is flagged with the worst cell") {
        const Curve c = make_preset("monomial", {{"m", 1}});
        CoeffTable t = build_table(c, 4);
        t.set(2, 1, 2, 5.0);
        const auto report = cross_check(t, chen_truncated_signature(sample_polyline(c, 1000), 5), 5, 1e-6);
        CHECK_FALSE(report.within_tolerance);
        CHECK(report.worst_j == 2);
        CHECK(report.worst_k == 1);
        CHECK(report.worst_l == 2);
    }
}

TEST_CASE("raw and scaled units") {
    const SignedLog raw{1, -std::lgamma(5.0)};
    CHECK(scaled_from_raw(raw, 1, 2, 1.0) == doctest::Approx(1.0));
    for (double v : {-3.5, 0.0, 1e-8, 0.25}) {
        for (double c0 : {0.5, 1.0, 3.0}) {
            const SignedLog r = raw_from_scaled(v, 30, 12, c0);
            CHECK(scaled_from_raw(r, 30, 12, c0) == doctest::Approx(v).epsilon(1e-13));
            if (v != 0.0) {
                // raw = v C0^n / (n+1)!
                CHECK(r.log_abs == doctest::Approx(std::log(std::abs(v)) + 42 * std::log(c0) -
                                                   std::lgamma(44.0)));
            } else {
                CHECK(r.sign == 0);
            }
        }
    }
    CHECK(raw_from_scaled(2.0, 1, 1, 1.0).value() == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("table interchange") {
    const CoeffTable t = build_table(make_preset("monomial", {{"m", 1}, {"c0", 1.5}}), 20);
    for (bool raw : {false, true}) {
        std::stringstream buffer;
        emit_table(buffer, t, raw);
        const CoeffTable back = ingest_table(buffer);
        CHECK(back.truncation() == 20);
        CHECK(back.axial_speed() == 1.5);
        for (int n = 0; n <= 20; ++n) {
            for (int k = 0; k <= n; ++k) {
                if (raw) {
                    CHECK(back.at(2, k, n - k) == doctest::Approx(t.at(2, k, n - k)).epsilon(1e-14));
                } else {
                    CHECK(back.at(2, k, n - k) == t.at(2, k, n - k));
                }
            }
        }
    }

    std::stringstream csv;
    emit_table_csv(csv, t);
    std::string comment;
    std::string header;
    std::getline(csv, comment);
    std::getline(csv, header);
    CHECK(comment.front() == '#');
    CHECK(header == "j,k,l,v");

    auto rejects = [](const std::string& text) {
        std::stringstream in(text);
        CHECK_THROWS_AS(ingest_table(in), ConfigError);
    };
    rejects(R"({"d":2,"i":1,"C0":0.0,"N":0,"scaled":true,"cells":[{"j":2,"k":0,"l":0,"v":0.5}]})");
    rejects(R"({"d":2,"i":1,"C0":1.0,"N":1,"scaled":true,"cells":[{"j":2,"k":0,"l":0,"v":0.5}]})");
    rejects(R"({"d":2,"i":1,"C0":1.0,"N":0,"scaled":true,"cells":[{"j":2,"k":0,"l":0,"v":0.5},{"j":2,"k":0,"l":0,"v":0.5}]})");
    rejects(R"({"d":2,"i":1,"C0":1.0,"N":0,"scaled":true,"cells":[{"j":3,"k":0,"l":0,"v":0.5}]})");
    rejects("not json");
    std::stringstream ok(R"({"d":2,"i":1,"C0":1.0,"N":0,"scaled":true,"cells":[{"j":2,"k":0,"l":0,"v":0.5}]})");
    CHECK(ingest_table(ok).at(2, 0, 0) == 0.5);
}
