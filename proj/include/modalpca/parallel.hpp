// Copyright 2026 The modalpca Authors.
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

#include <cstddef>
#include <functional>
#include <vector>

namespace modalpca::parallel {

/// Worker count: MODALPCA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned thread_count();

/// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks must
/// write only to their own slot. The first exception (lowest index) is
/// rethrown after all workers finish.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& task,
                    unsigned threads = thread_count());

/// Ordered parallel map: out[i] = fn(i).
template <class T, class Fn>
std::vector<T> map_indices(std::size_t count, Fn&& fn, unsigned threads = thread_count()) {
  std::vector<T> out(count);
  for_each_index(count, [&](std::size_t i) { out[i] = fn(i); }, threads);
  return out;
}

}  // namespace modalpca::parallel
