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

#include <cstddef>
#include <exception>
#include <functional>

namespace sigaxial {

// Worker count: hardware concurrency, capped by the SIG_THREADS environment variable.
unsigned worker_count();

// Runs body(index) for index in [0, count) over worker_count() threads. Each index is
// visited exactly once; results must be written to per-index slots so the outcome does
// not depend on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sigaxial
