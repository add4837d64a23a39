// Copyright 2026 The varlab Authors
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

#ifndef VARLAB_PARALLEL_HPP_
#define VARLAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace varlab {

/// Sets the worker count for parallel_for. 0 restores the default
/// (hardware concurrency). Reads the VARLAB_THREADS environment
/// variable on first use when unset.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(begin, end) over a static contiguous partition of [0, n).
/// Work items must write to disjoint slots; reductions over the results
/// happen serially at the call site, so every output is independent of
/// the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace varlab

#endif  // VARLAB_PARALLEL_HPP_
