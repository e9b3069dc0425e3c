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

#ifndef PDOV_CONFIGURATION_HPP
#define PDOV_CONFIGURATION_HPP

#include <span>
#include <vector>

namespace pdov {

/// Mass tolerance for membership of the simplex levels L_n.
inline constexpr double kMassTolerance = 1e-12;

/// A point of the closed ordered simplex: finitely many descending,
/// nonnegative entries with total mass at most 1 (within kMassTolerance).
class Configuration {
 public:
  /// Validates order, sign and mass; throws DomainError otherwise.
  explicit Configuration(std::vector<double> entries);

  /// Sorts descending first. Use for size-biased (GEM) or random orderings.
  static Configuration from_unsorted(std::vector<double> entries);

  [[nodiscard]] std::span<const double> entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return i < entries_.size() ? entries_[i] : 0.0; }
  [[nodiscard]] double total_mass() const { return total_mass_; }

  /// Number of strictly positive entries.
  [[nodiscard]] int positive_count() const { return positive_count_; }

  /// True when the mass is 1 within kMassTolerance and exactly n entries are positive.
  [[nodiscard]] bool in_level(int n) const;

 private:
  std::vector<double> entries_;
  double total_mass_ = 0.0;
  int positive_count_ = 0;
};

}  // namespace pdov

#endif  // PDOV_CONFIGURATION_HPP
