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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pdov/errors.hpp"
#include "pdov/ldp.hpp"
#include "pdov/mc.hpp"
#include "pdov/moments.hpp"
#include "pdov/parallel.hpp"
#include "pdov/tilted.hpp"

namespace pdov {
namespace {

TEST(Gem, MassConservationAndStickReconstruction) {
  for (double theta : {0.05, 0.5, 1.0}) {
    for (std::uint64_t stream = 0; stream < 500; ++stream) {
      CounterRng rng(11, stream);
      const GemSample s = sample_gem(theta, 1e-8, rng);
      const double mass = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
      EXPECT_NEAR(mass + s.residual, 1.0, 1e-12);
      EXPECT_LT(s.residual, 1e-8);
      double keep = 1.0;
      for (std::size_t i = 0; i < s.sticks.size(); ++i) {
        EXPECT_NEAR(s.weights[i], keep * s.sticks[i], 1e-15);
        EXPECT_GT(s.weights[i], 0.0);
        EXPECT_LT(s.weights[i], 1.0 + 1e-15);
        keep *= 1.0 - s.sticks[i];
      }
    }
  }
}

TEST(Gem, FirstStickMeanMatchesBeta) {
  for (double theta : {0.1, 1.0}) {
    double sum = 0.0;
    double sq = 0.0;
    constexpr int n = 100'000;
    for (int i = 0; i < n; ++i) {
      CounterRng rng(5, static_cast<std::uint64_t>(i));
      const double u = sample_gem(theta, 0.5, rng).sticks.front();
      sum += u;
      sq += u * u;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    EXPECT_LT(std::abs(mean - 1.0 / (1.0 + theta)), 4.0 * se);
  }
}

TEST(Gem, DeterministicForFixedSeed) {
  CounterRng a(3, 7);
  CounterRng b(3, 7);
  const GemSample x = sample_gem(0.4, 1e-8, a);
  const GemSample y = sample_gem(0.4, 1e-8, b);
  EXPECT_EQ(x.weights, y.weights);
  EXPECT_EQ(x.residual, y.residual);
}

TEST(Gem, RejectsBadArguments) {
  CounterRng rng(0, 0);
  EXPECT_THROW(sample_gem(0.0, 1e-8, rng), DomainError);
  EXPECT_THROW(sample_gem(0.5, 0.0, rng), DomainError);
  EXPECT_THROW(sample_gem(0.5, 1.0, rng), DomainError);
}

TEST(Homozygosity, SimpleSamples) {
  GemSample one;
  one.weights = {1.0};
  one.residual = 0.0;
  EXPECT_EQ(homozygosity(one).value, 1.0);
  GemSample uniform;
  uniform.weights = std::vector<double>(4, 0.25);
  uniform.residual = 0.0;
  EXPECT_EQ(homozygosity(uniform).value, 0.25);
  EXPECT_EQ(homozygosity(uniform).error_bound, 0.0);
}

TEST(Homozygosity, RefinedRedrawStaysInsideBracket) {
  // A counter-based stream replays the same stick prefix at a tighter residual target.
  for (std::uint64_t stream = 0; stream < 1000; ++stream) {
    CounterRng coarse_rng(21, stream);
    CounterRng fine_rng(21, stream);
    const GemSample coarse = sample_gem(0.7, 1e-3, coarse_rng);
    const GemSample fine = sample_gem(0.7, 1e-12, fine_rng);
    ASSERT_GE(fine.sticks.size(), coarse.sticks.size());
    for (std::size_t i = 0; i < coarse.sticks.size(); ++i) {
      ASSERT_EQ(coarse.sticks[i], fine.sticks[i]);
    }
    const Homozygosity h = homozygosity(coarse);
    const double refined = homozygosity(fine).value;
    EXPECT_LE(h.error_bound, 1e-6);
    EXPECT_GE(refined, h.value - 1e-15);
    EXPECT_LE(refined, h.value + h.error_bound + 1e-15);
  }
}

TEST(WeightedSummary, ConstantStatisticIsExact) {
  const SelectionSpec spec(6.0, 0.3);
  const auto est = tilted_estimate(spec, [](const Configuration&) { return 0.7; }, 5000, 1);
  EXPECT_EQ(est.value, 0.7);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(WeightedSummary, EssBounds) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const auto even = summarize_weighted(v, std::vector<double>{1.0, 1.0, 1.0, 1.0});
  EXPECT_NEAR(even.effective_sample_size, 4.0, 1e-12);
  const auto skew = summarize_weighted(v, std::vector<double>{1.0, 1e-3, 1e-3, 1e-3});
  EXPECT_LT(skew.effective_sample_size, 1.1);
  EXPECT_TRUE(skew.degenerate);
  const auto est = tilted_estimate_h2(SelectionSpec(6.0, 0.2), [](double h) { return h; }, 5000, 2);
  EXPECT_LE(est.effective_sample_size, 5000.0);
  EXPECT_GT(est.effective_sample_size, 0.0);
}

TEST(WeightedSummary, WeightsLieInTheoreticalRange) {
  const SelectionSpec spec(6.0, 0.2);
  const double lo = std::pow(spec.theta(), spec.lambda());
  for_each_draw_serial(spec.theta(), kDefaultGemEpsilon, 5000, 4, [&](std::int64_t, const GemSample& s) {
    const double w = std::exp(spec.sigma() * homozygosity(s).value);
    EXPECT_GE(w, lo);
    EXPECT_LE(w, 1.0);
  });
}

TEST(TiltedEstimate, UntiltedMeanHomozygosity) {
  const auto est = tilted_estimate_h2(SelectionSpec(4.0, 1.0), [](double h) { return h; }, 100'000, 3);
  EXPECT_LT(std::abs(est.value - 0.5), 4.0 * est.std_error);
  EXPECT_NEAR(est.effective_sample_size, 100'000.0, 1e-6);
}

TEST(TiltedEstimate, HeterozygosityPowersMatchMomentsAtThetaOne) {
  for (int k = 1; k <= 4; ++k) {
    const auto est = tilted_estimate(
        SelectionSpec(2.0, 1.0), [k](const Configuration& x) { return std::pow(1.0 - phi2(x), k); }, 50'000,
        100 + static_cast<std::uint64_t>(k));
    EXPECT_LT(std::abs(est.value - moment_via_recursion(1.0, k)), 4.0 * est.std_error) << k;
  }
}

TEST(TiltedEstimate, MatchesSeriesMgf) {
  const SelectionSpec spec(6.0, 0.3);
  const auto est = tilted_estimate_h2(spec, [](double h) { return std::exp(h); }, 200'000, 42);
  EXPECT_LT(std::abs(est.value - mgf(spec, 1.0)), 4.0 * est.std_error);
}

TEST(TiltedEstimate, RejectsSmallSamples) {
  EXPECT_THROW(tilted_estimate_h2(SelectionSpec(1.0, 0.5), [](double h) { return h; }, 999, 0), DomainError);
  EXPECT_THROW(homozygosity_histogram(SelectionSpec(1.0, 0.5), 9999, 10, 0), DomainError);
  EXPECT_THROW(homozygosity_histogram(SelectionSpec(1.0, 0.5), 10'000, 0, 0), DomainError);
  EXPECT_THROW(ball_probability(SelectionSpec(1.0, 0.5), 0, 0.1, 10'000, 0), DomainError);
  EXPECT_THROW(ball_probability(SelectionSpec(1.0, 0.5), 1, 0.0, 10'000, 0), DomainError);
}

TEST(ParallelDraws, BitIdenticalAcrossThreadCounts) {
  const SelectionSpec spec(6.0, 0.3);
  set_thread_cap(1);
  const auto one = tilted_estimate_h2(spec, [](double h) { return h * h; }, 30'000, 77);
  std::vector<double> serial(30'000);
  for_each_draw_serial(0.3, kDefaultGemEpsilon, 30'000, 77,
                       [&](std::int64_t i, const GemSample& s) { serial[i] = homozygosity(s).value; });
  for (int threads : {2, 3, 8}) {
    set_thread_cap(threads);
    const auto many = tilted_estimate_h2(spec, [](double h) { return h * h; }, 30'000, 77);
    EXPECT_EQ(one.value, many.value);
    EXPECT_EQ(one.std_error, many.std_error);
    EXPECT_EQ(one.effective_sample_size, many.effective_sample_size);
    std::vector<double> par(30'000);
    for_each_draw(0.3, kDefaultGemEpsilon, 30'000, 77,
                  [&](std::int64_t i, const GemSample& s) { par[i] = homozygosity(s).value; });
    EXPECT_EQ(par, serial);
  }
  set_thread_cap(0);
}

TEST(Histogram, MassesFormADistribution) {
  const auto h = homozygosity_histogram(SelectionSpec(6.0, 0.3), 20'000, 20, 5);
  ASSERT_EQ(h.mass.size(), 20u);
  double total = 0.0;
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    EXPECT_GE(h.mass[i], 0.0);
    EXPECT_NEAR(h.bin_hi[i] - h.bin_lo[i], 0.05, 1e-15);
    total += h.mass[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Histogram, UntiltedMeanAndConcentrationTrend) {
  const auto flat = homozygosity_histogram(SelectionSpec(6.0, 1.0), 50'000, 100, 6);
  double mean = 0.0;
  for (std::size_t i = 0; i < flat.mass.size(); ++i) {
    mean += flat.mass[i] * 0.5 * (flat.bin_lo[i] + flat.bin_hi[i]);
  }
  EXPECT_NEAR(mean, 0.5, 0.01);

  auto half_bin_mass = [](double theta) {
    const auto h = homozygosity_histogram(SelectionSpec(6.0, theta), 100'000, 10, 8);
    return h.mass[5];  // [0.5, 0.6)
  };
  const double a = half_bin_mass(0.3);
  const double b = half_bin_mass(0.1);
  const double c = half_bin_mass(0.05);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
}

TEST(BallProbability, WholeSpaceAndTrends) {
  const auto all = ball_probability(SelectionSpec(2.0, 0.3), 1, 1.0, 10'000, 1);
  EXPECT_EQ(all.value, 1.0);
  const double hi = ball_probability(SelectionSpec(2.0, 0.3), 1, 0.2, 100'000, 42).value;
  const double lo = ball_probability(SelectionSpec(2.0, 0.1), 1, 0.2, 100'000, 42).value;
  EXPECT_LT(hi, lo);
  for (double theta : {0.3, 0.1, 0.05}) {
    const auto three = ball_probability(SelectionSpec(6.0, theta), 3, 0.05, 100'000, 42);
    const auto two = ball_probability(SelectionSpec(6.0, theta), 2, 0.05, 100'000, 42);
    EXPECT_LT(three.value, two.value) << theta;
  }
}

}  // namespace
}  // namespace pdov
