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

#include <span>

namespace sigaxial {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;  // 0 or 1 means degenerate: slope and intercept are NaN
};

// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least squares of log y on log x over the entries with x >= tail_start and y > 0.
LineFit fit_loglog_tail(std::span<const double> x, std::span<const double> y, double tail_start);

}  // namespace sigaxial
