// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lim::detail {

// Runs body(worker_state, i) for i in [0, count). Each thread constructs its
// own state with make_state(); iteration order within a thread is ascending.
template <typename MakeState, typename Body>
void ParallelFor(uint64_t count, MakeState&& make_state, Body&& body) {
#ifdef _OPENMP
#pragma omp parallel if (count > 256)
  {
    auto state = make_state();
#pragma omp for schedule(dynamic, 64)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) body(state, static_cast<uint64_t>(i));
  }
#else
  auto state = make_state();
  for (uint64_t i = 0; i < count; ++i) body(state, i);
#endif
}

}  // namespace lim::detail
