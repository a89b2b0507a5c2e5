// Copyright (c) 2026 vpriv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VPRIV_PARALLEL_H_
#define VPRIV_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace vpriv {

// Calls fn(i) for every i in [0, n) on up to `threads` workers (0 or 1 runs
// inline). Work is split into contiguous chunks; callers write results by
// index so output never depends on the thread count. The first exception
// thrown by any worker is rethrown after all workers join.
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace vpriv

#endif  // VPRIV_PARALLEL_H_
