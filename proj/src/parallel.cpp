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

#include "pdov/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace pdov {

namespace {

int env_threads() {
  const char* raw = std::getenv("PDOV_THREADS");
  if (raw == nullptr) {
    return 0;
  }
  try {
    const int n = std::stoi(raw);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

std::atomic<int>& cap_override() {
  static std::atomic<int> cap{-1};
  return cap;
}

}  // namespace

int configured_threads() {
  const int override_cap = cap_override().load();
  if (override_cap > 0) {
    return override_cap;
  }
  const int from_env = env_threads();
  return from_env > 0 ? std::min(from_env, omp_get_max_threads()) : omp_get_max_threads();
}

void set_thread_cap(int threads) { cap_override().store(threads > 0 ? threads : -1); }

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 64;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace pdov
