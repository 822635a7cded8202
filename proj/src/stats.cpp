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

#include "sigaxial/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "sigaxial/errors.hpp"

namespace sigaxial {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ConfigError("line fit needs equally many x and y values");
    }
    LineFit fit;
    fit.points = static_cast<int>(x.size());
    if (x.size() < 2) {
        fit.slope = fit.intercept = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
        mean_x += x[m];
        mean_y += y[m];
    }
    mean_x /= static_cast<double>(x.size());
    mean_y /= static_cast<double>(y.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
        sxx += (x[m] - mean_x) * (x[m] - mean_x);
        sxy += (x[m] - mean_x) * (y[m] - mean_y);
    }
    if (sxx == 0.0) {
        fit.slope = fit.intercept = std::numeric_limits<double>::quiet_NaN();
        fit.points = 1;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    return fit;
}

LineFit fit_loglog_tail(std::span<const double> x, std::span<const double> y, double tail_start) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t m = 0; m < x.size() && m < y.size(); ++m) {
        if (x[m] >= tail_start && x[m] > 0.0 && y[m] > 0.0) {
            lx.push_back(std::log(x[m]));
            ly.push_back(std::log(y[m]));
        }
    }
    return fit_line(lx, ly);
}

}  // namespace sigaxial
