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

#include <algorithm>
#include <cmath>
#include <vector>

#include "sigaxial/beta_kernel.hpp"
#include "sigaxial/errors.hpp"

using namespace sigaxial;

namespace {

// rho by repeated multiplication, no logs involved.
double rho_direct(int k, int l, double s) {
    double value = 1.0;
    for (int m = 1; m <= k + l + 1; ++m) value *= m;
    for (int m = 1; m <= k; ++m) value /= m;
    for (int m = 1; m <= l; ++m) value /= m;
    return value * std::pow(s, k) * std::pow(1.0 - s, l);
}

double simpson(int k, int l, int intervals, double (*weight)(double)) {
    const double h = 1.0 / intervals;
    double acc = 0.0;
    for (int m = 0; m <= intervals; ++m) {
        const double s = m * h;
        const double c = (m == 0 || m == intervals) ? 1.0 : (m % 2 ? 4.0 : 2.0);
        acc += c * rho_direct(k, l, s) * weight(s);
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("kernel point values") {
    CHECK(log_rho(KernelIndex(0, 0), 0.37) == doctest::Approx(0.0));
    CHECK(std::exp(log_rho(KernelIndex(1, 1), 0.5)) == doctest::Approx(1.5));
    CHECK(std::isinf(log_rho(KernelIndex(2, 0), 0.0)));
    CHECK(log_rho(KernelIndex(2, 0), 0.0) < 0.0);
    CHECK(std::exp(log_rho(KernelIndex(0, 3), 0.0)) == doctest::Approx(4.0));

    for (int k = 0; k <= 9; ++k) {
        for (int l = 0; l <= 9; ++l) {
            for (double s : {0.05, 0.3, 0.5, 0.81}) {
                CHECK(std::exp(log_rho(KernelIndex(k, l), s)) ==
                      doctest::Approx(rho_direct(k, l, s)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("kernel input validation") {
    CHECK_THROWS_AS(KernelIndex(-1, 2), ConfigError);
    CHECK_THROWS_AS(log_rho(KernelIndex(1, 1), 1.5), ConfigError);
    CHECK_THROWS_AS(log_rho(KernelIndex(1, 1), -0.1), ConfigError);
    CHECK_THROWS_AS(rho_mode(KernelIndex(0, 0)), ConfigError);
}

TEST_CASE("normalization and mean against Simpson") {
    for (int k : {0, 1, 4, 7}) {
        for (int l : {0, 2, 5}) {
            CHECK(simpson(k, l, 4000, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-9));
            const double mean = static_cast<double>(k + 1) / (k + l + 2);
            CHECK(simpson(k, l, 4000, [](double s) { return s; }) ==
                  doctest::Approx(mean).epsilon(1e-9));
        }
    }
}

TEST_CASE("mode and spread") {
    CHECK(rho_mode(KernelIndex(3, 1)) == doctest::Approx(0.75));
    CHECK(rho_mode(KernelIndex(0, 5)) == 0.0);

    // scan on a 10^4 grid
    const KernelIndex idx(20, 30);
    double best = -1.0;
    double best_s = 0.0;
    for (int m = 0; m <= 10000; ++m) {
        const double s = m / 10000.0;
        const double v = log_rho(idx, s);
        if (v > best || m == 0) {
            best = v;
            best_s = s;
        }
    }
    CHECK(std::abs(best_s - 0.4) <= 1e-4);

    for (int k : {0, 3, 10}) {
        for (int l : {0, 6}) {
            const double a = k + 1.0;
            const double b = l + 1.0;
            const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
            CHECK(rho_stddev(KernelIndex(k, l)) == doctest::Approx(std::sqrt(var)));
        }
    }
}

TEST_CASE("decay envelope") {
    CHECK(fast_decay_envelope(1, 0.25) == doctest::Approx(3.0 * std::exp(-1.0 / 18.0)));
    CHECK_THROWS_AS(fast_decay_envelope(10, 0.5), ConfigError);
    CHECK_THROWS_AS(fast_decay_envelope(0, 0.2), ConfigError);
    CHECK_THROWS_AS(fast_decay_envelope(10, 0.0), ConfigError);

    // log envelope is decreasing once (3/2)/n < (2 eps0 / 18) n^{2 eps0 - 1}
    const double eps0 = 0.25;
    const double stationary = std::pow(27.0 / (2.0 * eps0), 1.0 / (2.0 * eps0));
    double previous = fast_decay_envelope(static_cast<long>(stationary) + 1, eps0);
    for (long n = static_cast<long>(stationary) + 2; n < 200000; n = n * 11 / 10 + 1) {
        const double value = fast_decay_envelope(n, eps0);
        CHECK(value < previous);
        previous = value;
    }
    CHECK(fast_decay_envelope(100000000, 0.4) < 1e-100);
}

TEST_CASE("decay sweep at moderate n") {
    const std::vector<long> ns{1000, 2000};
    const FastDecayReport report = check_fast_decay(ns, 0.25, 2001);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.violations == 0);
        CHECK(row.worst_ratio < 1.0);
    }
    CHECK(report.empirical_n0 == 1000);
}

TEST_CASE("small n rows are recorded") {
    const std::vector<long> ns{20, 40};
    const FastDecayReport report = check_fast_decay(ns, 0.05, 1001);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].n == 20);
    CHECK(report.rows[0].eps0 == 0.05);
    CHECK(report.rows[0].worst_ratio > 0.0);
    CHECK(report.empirical_n0 == (report.rows[1].violations == 0 ? (report.rows[0].violations == 0 ? 20 : 40) : -1));
}

TEST_CASE("violation sets are mirror images") {
    for (auto [k, l] : {std::pair{3, 17}, std::pair{1, 29}, std::pair{0, 12}}) {
        const auto a = fast_decay_violations(KernelIndex(k, l), 0.05, 801);
        const auto b = fast_decay_violations(KernelIndex(l, k), 0.05, 801);
        REQUIRE(a.size() == b.size());
        std::vector<bool> reversed(b.rbegin(), b.rend());
        CHECK(a == reversed);
    }
}

TEST_CASE("mode bound") {
    const ModeBoundReport report = check_mode_bound(400);
    CHECK(report.worst_ratio < 1.0);
    CHECK(report.threshold <= 1);
}
