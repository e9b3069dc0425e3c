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

#ifndef PDOV_MOMENTS_HPP
#define PDOV_MOMENTS_HPP

#include <cstdint>
#include <vector>

#include "pdov/coefficients.hpp"
#include "pdov/mc.hpp"

namespace pdov {

/// Heterozygosity moments m_k = E(1 - H2)^k under PD(theta), k = 1..kmax.
struct MomentVector {
  double theta = 0.0;
  std::vector<double> values;  ///< values[k-1] = m_k

  [[nodiscard]] int kmax() const { return static_cast<int>(values.size()); }
  [[nodiscard]] double operator()(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
};

/// m_k = sum_{l=1}^k A_{k,l}(theta) theta^l. Needs a table with theta > 0 and kmax <= table.kmax().
MomentVector moments_from_table(const CoeffTable& table, int kmax);

/// log m_j for j = 0..table.kmax(), with m_0 = 1. Stays finite where m_j underflows a double.
std::vector<LogNum> log_moments_from_table(const CoeffTable& table);

/// m_k by the direct recursion in m_1..m_{k-1}, independent of the coefficient
/// table. Results are memoized per theta (compared bitwise).
double moment_via_recursion(double theta, int k);

/// 2^{k-l} Gamma(k-l+1) Gamma(k+l+theta) theta / Gamma(2k+1+theta), which equals
/// theta-weighted E[(2U(1-U))^{k-l} (1-U)^{2l}] for U ~ Beta(1, theta).
double beta_factor(int k, int l, double theta);

/// Plain Monte Carlo estimate of m_k from n GEM draws.
TiltedEstimate mc_moment_oracle(double theta, int k, std::int64_t n, std::uint64_t seed);

/// Estimates of m_1..m_kmax from one shared set of n GEM draws.
std::vector<TiltedEstimate> mc_moments(double theta, int kmax, std::int64_t n, std::uint64_t seed);

}  // namespace pdov

#endif  // PDOV_MOMENTS_HPP
