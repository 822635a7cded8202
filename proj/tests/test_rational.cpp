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
#include <random>
#include <sstream>
#include <vector>

#include "sigaxial/errors.hpp"
#include "sigaxial/rational.hpp"

using namespace sigaxial;

TEST_CASE("naive pairs") {
    CHECK(naive_pair(0.5, 7) == RationalPair{3, 7});
    CHECK(naive_pair(1.0, 5) == RationalPair{5, 5});
    CHECK(naive_pair(0.0, 9) == RationalPair{0, 9});
    CHECK_THROWS_AS(naive_pair(1.2, 3), ConfigError);
    CHECK_THROWS_AS(naive_pair(0.5, 0), ConfigError);

    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> un(1, 1000000);
    for (int trial = 0; trial < 100000; ++trial) {
        const double x = ux(rng);
        const std::int64_t n = un(rng);
        const RationalPair pair = naive_pair(x, n);
        const long double err = std::fabs(static_cast<long double>(pair.p) / pair.q - x);
        REQUIRE(err < 1.0L / pair.q);
    }
}

TEST_CASE("uniform pairs") {
    const auto at = uniform_pairs(10);
    CHECK(at(0.55) == RationalPair{5, 10});
    CHECK(at(0.0) == RationalPair{0, 10});
    for (std::int64_t n : {1, 7, 64, 1000}) {
        const auto f = uniform_pairs(n);
        double worst = 0.0;
        for (int m = 0; m <= 1000; ++m) {
            const double x = m / 1000.0;
            worst = std::max(worst, std::abs(f(x).value() - x));
        }
        CHECK(worst <= 1.0 / static_cast<double>(n));
    }
}

TEST_CASE("continued fractions") {
    SUBCASE("rational input terminates") {
        const auto cf = continued_fraction_convergents(0.5, 10);
        CHECK(cf.exact);
        CHECK(cf.pairs == std::vector<RationalPair>{{0, 1}, {1, 2}});
    }
    SUBCASE("golden ratio conjugate gives Fibonacci") {
        const double x = (std::sqrt(5.0) - 1.0) / 2.0;
        const auto cf = continued_fraction_convergents(x, 15);
        REQUIRE(cf.pairs.size() == 15);
        std::int64_t a = 0;
        std::int64_t b = 1;
        for (const auto& pair : cf.pairs) {
            CHECK(pair.p == a);
            CHECK(pair.q == b);
            const std::int64_t next = a + b;
            a = b;
            b = next;
        }
    }
    SUBCASE("sqrt 2 - 1 gives Pell denominators") {
        const auto cf = continued_fraction_convergents(std::sqrt(2.0) - 1.0, 15);
        REQUIRE(cf.pairs.size() == 15);
        std::int64_t q_prev = 0;
        std::int64_t q = 1;
        for (const auto& pair : cf.pairs) {
            CHECK(pair.q == q);
            const std::int64_t next = 2 * q + q_prev;
            q_prev = q;
            q = next;
        }
    }
    SUBCASE("pi - 3") {
        const auto cf = continued_fraction_convergents(std::numbers::pi - 3.0, 15);
        const std::vector<RationalPair> known{{0, 1}, {1, 7}, {15, 106}, {16, 113}, {4687, 33102}};
        REQUIRE(cf.pairs.size() >= known.size());
        for (std::size_t m = 0; m < known.size(); ++m) {
            CHECK(cf.pairs[m] == known[m]);
        }
    }
    SUBCASE("every convergent meets the Dirichlet bound") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ux(0.0, 1.0);
        for (int trial = 0; trial < 2000; ++trial) {
            const double x = ux(rng);
            for (const auto& pair : continued_fraction_convergents(x, 20).pairs) {
                const double q = static_cast<double>(pair.q);
                CHECK(approximation_error(pair, x) < 1.0 / (q * q));
            }
        }
    }
    CHECK(continued_fraction_convergents(0.0, 5).pairs == std::vector<RationalPair>{{0, 1}});
    CHECK(continued_fraction_convergents(1.0, 5).pairs == std::vector<RationalPair>{{1, 1}});
}

TEST_CASE("rate condition") {
    const double x = 0.3183;
    const auto naive = RationalScheme(SchemeKind::naive, x).pairs(500);
    CHECK(meets_rate_condition(std::vector<RationalPair>(naive.begin() + 1, naive.end()), x));
    CHECK(meets_rate_condition(RationalScheme(SchemeKind::continued_fraction, x).pairs(1000000), x));
    const std::vector<RationalPair> repeated{{1, 2}, {1, 2}};
    CHECK_FALSE(meets_rate_condition(repeated, 0.5));
    const std::vector<RationalPair> far{{1, 100}};
    CHECK_FALSE(meets_rate_condition(far, 0.9));
}

TEST_CASE("schemes") {
    CHECK(parse_scheme("cf") == SchemeKind::continued_fraction);
    CHECK(parse_scheme("naive") == SchemeKind::naive);
    CHECK(parse_scheme("decimal") == SchemeKind::decimal);
    CHECK_THROWS_AS(parse_scheme("farey"), ConfigError);
    CHECK(scheme_name(SchemeKind::continued_fraction) == "cf");

    const auto dec = RationalScheme(SchemeKind::decimal, 0.123456).pairs(100000);
    CHECK(dec == std::vector<RationalPair>{{1, 10}, {12, 100}, {123, 1000}, {1235, 10000}, {12346, 100000}});
    CHECK(RationalScheme(SchemeKind::decimal, 0.5).pairs(std::int64_t{1} << 40).size() == 9);

    const auto half = RationalScheme(SchemeKind::continued_fraction, 0.5).pairs(8);
    CHECK(half == std::vector<RationalPair>{{0, 1}, {1, 2}, {2, 4}, {3, 6}, {4, 8}});

    const auto fixed = RationalScheme(SchemeKind::fixed_list, 0.5, {{1, 3}, {2, 5}, {5, 11}}).pairs(6);
    CHECK(fixed.size() == 2);
    CHECK_THROWS_AS(RationalScheme(SchemeKind::fixed_list, 0.5, {{4, 3}}), ConfigError);
}

TEST_CASE("pairs CSV") {
    std::stringstream out;
    const std::vector<RationalPair> pairs{{1, 2}, {2, 3}};
    write_pairs_csv(out, pairs, 0.6);
    std::string line;
    std::getline(out, line);
    CHECK(line == "n,p,q,err");
    std::getline(out, line);
    CHECK(line.rfind("1,1,2,", 0) == 0);
}
