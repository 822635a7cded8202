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
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigaxial {

// p / q with 0 <= p <= q, q >= 1.
struct RationalPair {
    std::int64_t p = 0;
    std::int64_t q = 1;

    double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
    friend bool operator==(const RationalPair&, const RationalPair&) = default;
};

// |p/q - x|, evaluated as |p - q x| / q with a single rounding.
double approximation_error(RationalPair pair, double x);

RationalPair naive_pair(double x, std::int64_t n);

struct ConvergentList {
    std::vector<RationalPair> pairs;
    bool exact = false;  // the expansion terminated: the last pair equals x exactly
};

/// First `count` continued-fraction convergents of x in [0,1]. The expansion runs on the
/// exact binary rational value of the double, so every partial quotient is exact; it
/// stops early (exact = true) when that rational is reached. Values below 2^-52 are
/// treated as 0.
ConvergentList continued_fraction_convergents(double x, int count);

// (floor(n x), n) for every x; the sup-deviation is at most 1/n.
std::function<RationalPair(double)> uniform_pairs(std::int64_t n);

// True iff |p/q - x| < q^{-1/2} for every pair and denominators strictly increase.
bool meets_rate_condition(std::span<const RationalPair> pairs, double x);

enum class SchemeKind { naive, decimal, continued_fraction, fixed_list };

SchemeKind parse_scheme(std::string_view name);
std::string_view scheme_name(SchemeKind kind);

/// A rational-approximation sequence for one target x.
///   naive               (floor(n x), n) for n = 1, 2, ...
///   decimal             (round(10^n x), 10^n), denominators capped at 10^9
///   continued_fraction  convergents; an exact (rational) expansion continues with the
///                       multiples (m p, m q), m = 2, 3, ...
///   fixed_list          caller-supplied pairs
class RationalScheme {
public:
    RationalScheme(SchemeKind kind, double target, std::vector<RationalPair> fixed = {});

    SchemeKind kind() const noexcept { return kind_; }
    double target() const noexcept { return target_; }

    // Every pair with q <= q_max, in order of increasing q.
    std::vector<RationalPair> pairs(std::int64_t q_max) const;

private:
    SchemeKind kind_;
    double target_;
    std::vector<RationalPair> fixed_;
};

// CSV with header n,p,q,err.
void write_pairs_csv(std::ostream& out, std::span<const RationalPair> pairs, double x);

}  // namespace sigaxial
