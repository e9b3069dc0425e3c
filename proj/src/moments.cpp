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

#include "pdov/moments.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "pdov/errors.hpp"

namespace pdov {

MomentVector moments_from_table(const CoeffTable& table, int kmax) {
  detail::require(table.theta() > 0.0, "moments need a table built at theta > 0");
  detail::require(kmax >= 1 && kmax <= table.kmax(), "moment order exceeds the table");
  MomentVector m;
  m.theta = table.theta();
  m.values.reserve(static_cast<std::size_t>(kmax));
  const auto logm = log_moments_from_table(table);
  for (int k = 1; k <= kmax; ++k) {
    m.values.push_back(logm[k].value());
  }
  return m;
}

std::vector<LogNum> log_moments_from_table(const CoeffTable& table) {
  detail::require(table.theta() > 0.0, "moments need a table built at theta > 0");
  const LogNum theta = LogNum::from_value(table.theta());
  std::vector<LogNum> out(static_cast<std::size_t>(table.kmax()) + 1);
  out[0] = LogNum::one();
  for (int k = 1; k <= table.kmax(); ++k) {
    LogSumAccumulator acc;
    LogNum theta_pow = theta;
    for (int l = 1; l <= k; ++l) {
      acc.add(table.at(k, l) * theta_pow);
      theta_pow *= theta;
    }
    out[k] = acc.result();
  }
  return out;
}

double moment_via_recursion(double theta, int k) {
  detail::require(theta > 0.0 && theta <= 1.0, "theta must lie in (0, 1]");
  detail::require(k >= 1, "moment order must be >= 1");

  static std::mutex mutex;
  static std::map<std::uint64_t, std::vector<double>> cache;
  const std::lock_guard lock(mutex);
  auto& m = cache[std::bit_cast<std::uint64_t>(theta)];
  if (m.empty()) {
    m.push_back(1.0);  // m_0
  }
  for (int j = static_cast<int>(m.size()); j <= k; ++j) {
    const double prefactor = std::log1p(theta / (2.0 * j)) + j * std::numbers::ln2 + std::lgamma(j + 1.0) -
                             std::lgamma(2.0 * j + 1.0 + theta);
    double s = std::exp(prefactor + std::lgamma(j + theta)) * theta;
    for (int l = 1; l <= j - 1; ++l) {
      const double w = prefactor - l * std::numbers::ln2 - std::lgamma(l + 1.0) + std::lgamma(j + l + theta);
      s += theta * std::exp(w) * m[l];
    }
    m.push_back(s);
  }
  return m[k];
}

double beta_factor(int k, int l, double theta) {
  detail::require(theta > 0.0, "beta_factor requires theta > 0");
  detail::require(l >= 0 && l <= k, "beta_factor requires 0 <= l <= k");
  return std::exp((k - l) * std::numbers::ln2 + std::lgamma(k - l + 1.0) + std::lgamma(k + l + theta) +
                  std::log(theta) - std::lgamma(2.0 * k + 1.0 + theta));
}

std::vector<TiltedEstimate> mc_moments(double theta, int kmax, std::int64_t n, std::uint64_t seed) {
  detail::require(theta > 0.0 && theta <= 1.0, "theta must lie in (0, 1]");
  detail::require(kmax >= 1, "moment order must be >= 1");
  detail::require(n >= 1000, "Monte Carlo moment oracle needs n >= 1000");
  std::vector<double> het(static_cast<std::size_t>(n));
  for_each_draw(theta, kDefaultGemEpsilon, n, seed,
                [&](std::int64_t i, const GemSample& s) { het[i] = 1.0 - homozygosity(s).value; });
  const std::vector<double> ones(het.size(), 1.0);
  std::vector<double> powers(het.size(), 1.0);
  std::vector<TiltedEstimate> out;
  for (int k = 1; k <= kmax; ++k) {
    for (std::size_t i = 0; i < het.size(); ++i) {
      powers[i] *= het[i];
    }
    out.push_back(summarize_weighted(powers, ones));
  }
  return out;
}

TiltedEstimate mc_moment_oracle(double theta, int k, std::int64_t n, std::uint64_t seed) {
  return mc_moments(theta, k, n, seed).back();
}

}  // namespace pdov
