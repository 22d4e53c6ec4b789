// Copyright 2026 The gravbound Authors.
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

#ifndef GRAVBOUND_PARALLEL_HPP_
#define GRAVBOUND_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace gravbound {

// Number of workers used when a caller passes threads <= 0.
int default_thread_count();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on up to
// `threads` workers. Results must not depend on the split: callers write
// to disjoint output slots. The first exception thrown is rethrown.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace gravbound

#endif  // GRAVBOUND_PARALLEL_HPP_
