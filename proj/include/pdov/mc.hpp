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

#ifndef PDOV_MC_HPP
#define PDOV_MC_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "pdov/configuration.hpp"
#include "pdov/parallel.hpp"
#include "pdov/rng.hpp"
#include "pdov/selection.hpp"

namespace pdov {

/// Default residual-mass target for GEM truncation. The H2 truncation
/// error is at most epsilon^2 = 1e-16.
inline constexpr double kDefaultGemEpsilon = 1e-8;

/// Hard cap on sticks per draw.
inline constexpr std::int64_t kMaxSticks = 10'000'000;

/// A truncated GEM(theta) draw: stick fractions U_i ~ Beta(1, theta), weights
/// V_i = (1-U_1)...(1-U_{i-1}) U_i in stick order, and the unassigned residual.
struct GemSample {
  double theta = 1.0;
  std::vector<double> sticks;
  std::vector<double> weights;
  double residual = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Draws sticks until the residual falls below epsilon. Beta(1, theta) is
/// sampled by exact inversion, 1 - U = R^{1/theta} with R uniform on (0, 1].
/// Reuses `out`'s storage.
void sample_gem(double theta, double epsilon, CounterRng& rng, GemSample& out);
GemSample sample_gem(double theta, double epsilon, CounterRng& rng);

struct Homozygosity {
  double value;        ///< sum of squared sampled weights
  double error_bound;  ///< residual^2; the true H2 lies in [value, value + error_bound]
};

Homozygosity homozygosity(const GemSample& sample);

/// Self-normalized importance-sampling estimate.
struct TiltedEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  double effective_sample_size = 0.0;
  /// Set when the ESS falls below kDegenerateEss.
  bool degenerate = false;
};

inline constexpr double kDegenerateEss = 50.0;

/// Weighted summary of per-draw values. With equal weights this is the
/// plain sample mean and its standard error.
TiltedEstimate summarize_weighted(std::span<const double> values, std::span<const double> weights);

/// Statistic of a configuration; must be safe to call concurrently.
using Statistic = std::function<double(const Configuration&)>;

/// E_pi[f] for pi_{lambda,theta}, using PD(theta) draws as proposal and
/// weights exp(sigma H2) = theta^{lambda H2} in [theta^lambda, 1].
/// Each draw is sorted descending before f sees it.
TiltedEstimate tilted_estimate(const SelectionSpec& spec, const Statistic& statistic, std::int64_t n,
                               std::uint64_t seed, double epsilon = kDefaultGemEpsilon);

/// Faster path for statistics of H2 alone (no sorting).
TiltedEstimate tilted_estimate_h2(const SelectionSpec& spec, const std::function<double(double)>& f,
                                  std::int64_t n, std::uint64_t seed, double epsilon = kDefaultGemEpsilon);

struct WeightedHistogram {
  std::vector<double> bin_lo;
  std::vector<double> bin_hi;
  std::vector<double> mass;
  std::int64_t n_samples = 0;
  double effective_sample_size = 0.0;
  bool degenerate = false;
};

/// Importance-weighted histogram of H2 on (0, 1] with equal-width bins.
WeightedHistogram homozygosity_histogram(const SelectionSpec& spec, std::int64_t n, int bins,
                                         std::uint64_t seed);

/// pi_{lambda,theta}{ x : d(sorted x, c_k) < delta } where c_k is the uniform
/// configuration on k alleles.
TiltedEstimate ball_probability(const SelectionSpec& spec, int k, double delta, std::int64_t n,
                                std::uint64_t seed);

// Draw kernels ---------------------------------------------------------------

/// Calls per_draw(i, sample) for i in [0, n), draw i using stream i of `seed`.
/// OpenMP-parallel over draws; each worker reuses one GemSample buffer.
/// per_draw must only write state owned by index i.
template <class PerDraw>
void for_each_draw(double theta, double epsilon, std::int64_t n, std::uint64_t seed, PerDraw&& per_draw) {
  const int threads = configured_threads();
#pragma omp parallel num_threads(threads)
  {
    GemSample buffer;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      sample_gem(theta, epsilon, rng, buffer);
      buffer.seed = seed;
      buffer.stream = static_cast<std::uint64_t>(i);
      per_draw(i, static_cast<const GemSample&>(buffer));
    }
  }
}

/// Serial reference for for_each_draw; identical per-draw results.
template <class PerDraw>
void for_each_draw_serial(double theta, double epsilon, std::int64_t n, std::uint64_t seed,
                          PerDraw&& per_draw) {
  GemSample buffer;
  for (std::int64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    sample_gem(theta, epsilon, rng, buffer);
    buffer.seed = seed;
    buffer.stream = static_cast<std::uint64_t>(i);
    per_draw(i, static_cast<const GemSample&>(buffer));
  }
}

}  // namespace pdov

#endif  // PDOV_MC_HPP
