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

#ifndef PDOV_RNG_HPP
#define PDOV_RNG_HPP

#include <cstdint>
#include <limits>

namespace pdov {

/// SplitMix64 output function; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

/// Counter-based random stream.
///
/// The stream key is derived from (root seed, stream index) alone, and the
/// i-th output is mix64(key + i * golden). Draw j of stream s is therefore a
/// pure function of (seed, s, j): results never depend on which thread
/// evaluated the stream or in what order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on (0, 1], 53-bit resolution. Never returns 0.
  double uniform_open_closed();

  [[nodiscard]] std::uint64_t key() const { return key_; }
  [[nodiscard]] std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pdov

#endif  // PDOV_RNG_HPP
