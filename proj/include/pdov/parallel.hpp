// Copyright 2026 The pdov Authors
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

#ifndef PDOV_PARALLEL_HPP
#define PDOV_PARALLEL_HPP

#include <cstddef>
#include <span>

namespace pdov {

/// Worker count for OpenMP regions. Honors PDOV_THREADS (a positive integer
/// cap) when set; otherwise the OpenMP default.
int configured_threads();

/// Overrides the worker count for subsequent parallel regions (0 restores the default).
void set_thread_cap(int threads);

/// Pairwise summation. Result depends only on the values and their order.
double pairwise_sum(std::span<const double> values);

}  // namespace pdov

#endif  // PDOV_PARALLEL_HPP
