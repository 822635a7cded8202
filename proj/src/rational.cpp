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

#include "sigaxial/rational.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "sigaxial/errors.hpp"

namespace sigaxial {

namespace {

void check_target(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ConfigError("approximation target x must lie in [0, 1]");
    }
}

constexpr std::int64_t max_exact_denominator = std::int64_t{1} << 53;

}  // namespace

double approximation_error(RationalPair pair, double x) {
    const double q = static_cast<double>(pair.q);
    return std::abs(std::fma(-q, x, static_cast<double>(pair.p))) / q;
}

RationalPair naive_pair(double x, std::int64_t n) {
    check_target(x);
    if (n < 1) {
        throw ConfigError("naive approximation needs n >= 1");
    }
    auto p = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * x));
    p = std::min(std::max<std::int64_t>(p, 0), n);
    return {p, n};
}

ConvergentList continued_fraction_convergents(double x, int count) {
    check_target(x);
    if (count < 1) {
        throw ConfigError("continued fraction needs count >= 1");
    }
    ConvergentList out;
    if (x < 0x1p-52) {
        out.pairs.push_back({0, 1});
        out.exact = true;
        return out;
    }
    if (x == 1.0) {
        out.pairs.push_back({1, 1});
        out.exact = true;
        return out;
    }

    // x = mantissa / 2^shift exactly
    int exponent = 0;
    const double fraction = std::frexp(x, &exponent);
    auto mantissa = static_cast<__int128>(std::ldexp(fraction, 53));
    int shift = 53 - exponent;
    while (shift > 0 && (mantissa & 1) == 0) {
        mantissa >>= 1;
        --shift;
    }
    __int128 num = mantissa;
    __int128 den = static_cast<__int128>(1) << shift;

    std::int64_t p_prev = 1;
    std::int64_t q_prev = 0;
    std::int64_t p_prev2 = 0;
    std::int64_t q_prev2 = 1;
    while (static_cast<int>(out.pairs.size()) < count) {
        const __int128 a = num / den;
        const __int128 r = num - a * den;
        const __int128 p = a * p_prev + p_prev2;
        const __int128 q = a * q_prev + q_prev2;
        if (q > max_exact_denominator) {
            break;
        }
        out.pairs.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)});
        p_prev2 = p_prev;
        q_prev2 = q_prev;
        p_prev = static_cast<std::int64_t>(p);
        q_prev = static_cast<std::int64_t>(q);
        if (r == 0) {
            out.exact = true;
            break;
        }
        num = den;
        den = r;
    }
    return out;
}

std::function<RationalPair(double)> uniform_pairs(std::int64_t n) {
    if (n < 1) {
        throw ConfigError("uniform approximation needs n >= 1");
    }
    return [n](double x) { return naive_pair(x, n); };
}

bool meets_rate_condition(std::span<const RationalPair> pairs, double x) {
    if (pairs.empty()) {
        throw ConfigError("rate condition needs a nonempty list of pairs");
    }
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        const auto& pair = pairs[m];
        if (pair.q < 1) {
            return false;
        }
        if (m > 0 && pair.q <= pairs[m - 1].q) {
            return false;
        }
        if (!(approximation_error(pair, x) < 1.0 / std::sqrt(static_cast<double>(pair.q)))) {
            return false;
        }
    }
    return true;
}

SchemeKind parse_scheme(std::string_view name) {
    if (name == "naive") {
        return SchemeKind::naive;
    }
    if (name == "decimal") {
        return SchemeKind::decimal;
    }
    if (name == "cf" || name == "continued_fraction") {
        return SchemeKind::continued_fraction;
    }
    if (name == "fixed_list") {
        return SchemeKind::fixed_list;
    }
    throw ConfigError("unknown scheme '" + std::string(name) + "' (expected naive|decimal|cf)");
}

std::string_view scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::naive:
            return "naive";
        case SchemeKind::decimal:
            return "decimal";
        case SchemeKind::continued_fraction:
            return "cf";
        case SchemeKind::fixed_list:
            return "fixed_list";
    }
    return "unknown";
}

RationalScheme::RationalScheme(SchemeKind kind, double target, std::vector<RationalPair> fixed)
    : kind_(kind), target_(target), fixed_(std::move(fixed)) {
    check_target(target_);
    if (kind_ == SchemeKind::fixed_list) {
        if (fixed_.empty()) {
            throw ConfigError("fixed_list scheme needs at least one pair");
        }
        for (std::size_t m = 0; m < fixed_.size(); ++m) {
            const auto& pair = fixed_[m];
            if (pair.q < 1 || pair.p < 0 || pair.p > pair.q) {
                throw ConfigError("fixed_list pairs need 0 <= p <= q and q >= 1");
            }
        }
    }
}

std::vector<RationalPair> RationalScheme::pairs(std::int64_t q_max) const {
    std::vector<RationalPair> out;
    switch (kind_) {
        case SchemeKind::naive:
            for (std::int64_t n = 1; n <= q_max; ++n) {
                out.push_back(naive_pair(target_, n));
            }
            break;
        case SchemeKind::decimal: {
            std::int64_t q = 10;
            for (int n = 1; n <= 9 && q <= q_max; ++n, q *= 10) {
                auto p = static_cast<std::int64_t>(std::llround(static_cast<double>(q) * target_));
                out.push_back({std::min(std::max<std::int64_t>(p, 0), q), q});
            }
            break;
        }
        case SchemeKind::continued_fraction: {
            const ConvergentList cf = continued_fraction_convergents(target_, 64);
            for (const auto& pair : cf.pairs) {
                if (pair.q > q_max) {
                    break;
                }
                out.push_back(pair);
            }
            if (cf.exact && out.size() == cf.pairs.size()) {
                const RationalPair last = cf.pairs.back();
                for (std::int64_t m = 2; last.q * m <= q_max; ++m) {
                    out.push_back({last.p * m, last.q * m});
                }
            }
            break;
        }
        case SchemeKind::fixed_list:
            for (const auto& pair : fixed_) {
                if (pair.q <= q_max) {
                    out.push_back(pair);
                }
            }
            break;
    }
    return out;
}

void write_pairs_csv(std::ostream& out, std::span<const RationalPair> pairs, double x) {
    out << "n,p,q,err\n";
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        out << (m + 1) << ',' << pairs[m].p << ',' << pairs[m].q << ','
            << nlohmann::json(approximation_error(pairs[m], x)).dump() << '\n';
    }
}

}  // namespace sigaxial
