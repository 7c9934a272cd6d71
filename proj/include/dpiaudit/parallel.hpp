//
// Copyright 2026 The dpi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPIAUDIT_PARALLEL_HPP_
#define DPIAUDIT_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace dpiaudit {

// Thread budget: AUDIT_THREADS if set and positive, otherwise the hardware
// concurrency (AUDIT_THREADS=0 also means auto).
std::size_t thread_budget();

// Runs fn(i) for i in [0, n) on up to thread_budget() threads. Callers must
// only write to per-index slots so results do not depend on scheduling.
// Nested calls run inline on the calling thread. The first exception thrown
// by any fn is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dpiaudit

#endif  // DPIAUDIT_PARALLEL_HPP_
