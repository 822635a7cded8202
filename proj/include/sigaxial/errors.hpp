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

#include <stdexcept>
#include <string>

namespace sigaxial {

// Invalid input: bad parameters, malformed files, violated preconditions.
// The CLI maps this to exit status 1.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that could not reach its target accuracy. CLI exit status 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature refinement did not settle. Carries the last two refinement values.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double previous, double last)
        : NumericalError(what), previous_(previous), last_(last) {}

    double previous() const noexcept { return previous_; }
    double last() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

}  // namespace sigaxial
