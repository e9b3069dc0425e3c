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

#include "pdov/mc.hpp"

#include <cmath>

#include "pdov/errors.hpp"
#include "pdov/ldp.hpp"

namespace pdov {

void sample_gem(double theta, double epsilon, CounterRng& rng, GemSample& out) {
  detail::require(theta > 0.0 && std::isfinite(theta), "GEM sampling requires theta > 0");
  detail::require(epsilon > 0.0 && epsilon < 1.0, "GEM residual target must lie in (0, 1)");
  out.theta = theta;
  out.sticks.clear();
  out.weights.clear();
  double residual = 1.0;
  const double inv_theta = 1.0 / theta;
  while (residual >= epsilon) {
    if (static_cast<std::int64_t>(out.sticks.size()) >= kMaxSticks) {
      throw DomainError("GEM draw exceeded the stick cap; theta is pathological");
    }
    const double log_keep = std::log(rng.uniform_open_closed()) * inv_theta;  // log(1 - U)
    const double u = -std::expm1(log_keep);
    out.sticks.push_back(u);
    out.weights.push_back(residual * u);
    residual *= std::exp(log_keep);
  }
  out.residual = residual;
}

GemSample sample_gem(double theta, double epsilon, CounterRng& rng) {
  GemSample s;
  sample_gem(theta, epsilon, rng, s);
  return s;
}

Homozygosity homozygosity(const GemSample& sample) {
  double h = 0.0;
  for (double w : sample.weights) {
    h += w * w;
  }
  return {h, sample.residual * sample.residual};
}

TiltedEstimate summarize_weighted(std::span<const double> values, std::span<const double> weights) {
  detail::require(values.size() == weights.size() && !values.empty(), "weighted summary needs matching data");
  const std::size_t n = values.size();
  const double total = pairwise_sum(weights);
  detail::require(total > 0.0, "weighted summary needs positive total weight");

  // Centering on the first value makes a constant statistic exact.
  const double anchor = values[0];
  std::vector<double> scratch(n);
  for (std::size_t i = 0; i < n; ++i) {
    scratch[i] = weights[i] * (values[i] - anchor);
  }
  const double estimate = anchor + pairwise_sum(scratch) / total;

  for (std::size_t i = 0; i < n; ++i) {
    const double r = weights[i] * (values[i] - estimate);
    scratch[i] = r * r;
  }
  const double std_error = std::sqrt(pairwise_sum(scratch)) / total;

  for (std::size_t i = 0; i < n; ++i) {
    scratch[i] = weights[i] * weights[i];
  }
  const double ess = std::min(static_cast<double>(n), total * total / pairwise_sum(scratch));

  TiltedEstimate est;
  est.value = estimate;
  est.std_error = std_error;
  est.n_samples = static_cast<std::int64_t>(n);
  est.effective_sample_size = ess;
  est.degenerate = ess < kDegenerateEss;
  return est;
}

namespace {

void check_mc_args(std::int64_t n, std::int64_t minimum) {
  detail::require(n >= minimum, "Monte Carlo sample count too small");
}

}  // namespace

TiltedEstimate tilted_estimate(const SelectionSpec& spec, const Statistic& statistic, std::int64_t n,
                               std::uint64_t seed, double epsilon) {
  check_mc_args(n, 1000);
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<double> weights(static_cast<std::size_t>(n));
  const double sigma = spec.sigma();
  for_each_draw(spec.theta(), epsilon, n, seed, [&](std::int64_t i, const GemSample& s) {
    const double h2 = homozygosity(s).value;
    weights[i] = std::exp(sigma * h2);
    values[i] = statistic(Configuration::from_unsorted(s.weights));
  });
  return summarize_weighted(values, weights);
}

TiltedEstimate tilted_estimate_h2(const SelectionSpec& spec, const std::function<double(double)>& f,
                                  std::int64_t n, std::uint64_t seed, double epsilon) {
  check_mc_args(n, 1000);
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<double> weights(static_cast<std::size_t>(n));
  const double sigma = spec.sigma();
  for_each_draw(spec.theta(), epsilon, n, seed, [&](std::int64_t i, const GemSample& s) {
    const double h2 = homozygosity(s).value;
    weights[i] = std::exp(sigma * h2);
    values[i] = f(h2);
  });
  return summarize_weighted(values, weights);
}

WeightedHistogram homozygosity_histogram(const SelectionSpec& spec, std::int64_t n, int bins,
                                         std::uint64_t seed) {
  check_mc_args(n, 10'000);
  detail::require(bins >= 1, "histogram needs at least one bin");
  std::vector<int> bin_of(static_cast<std::size_t>(n));
  std::vector<double> weights(static_cast<std::size_t>(n));
  const double sigma = spec.sigma();
  for_each_draw(spec.theta(), kDefaultGemEpsilon, n, seed, [&](std::int64_t i, const GemSample& s) {
    const double h2 = homozygosity(s).value;
    weights[i] = std::exp(sigma * h2);
    bin_of[i] = std::min(bins - 1, static_cast<int>(h2 * bins));
  });

  const double total = pairwise_sum(weights);
  std::vector<std::vector<double>> per_bin(static_cast<std::size_t>(bins));
  for (std::int64_t i = 0; i < n; ++i) {
    per_bin[bin_of[i]].push_back(weights[i]);
  }
  WeightedHistogram h;
  for (int b = 0; b < bins; ++b) {
    h.bin_lo.push_back(static_cast<double>(b) / bins);
    h.bin_hi.push_back(static_cast<double>(b + 1) / bins);
    h.mass.push_back(pairwise_sum(per_bin[b]) / total);
  }
  std::vector<double> sq(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    sq[i] = weights[i] * weights[i];
  }
  h.n_samples = n;
  h.effective_sample_size = std::min(static_cast<double>(n), total * total / pairwise_sum(sq));
  h.degenerate = h.effective_sample_size < kDegenerateEss;
  return h;
}

TiltedEstimate ball_probability(const SelectionSpec& spec, int k, double delta, std::int64_t n,
                                std::uint64_t seed) {
  detail::require(k >= 1, "ball center needs k >= 1");
  detail::require(delta > 0.0, "ball radius must be > 0");
  const Configuration center = uniform_config(k);
  return tilted_estimate(
      spec, [&](const Configuration& x) { return metric_d(x, center) < delta ? 1.0 : 0.0; }, n, seed);
}

}  // namespace pdov
