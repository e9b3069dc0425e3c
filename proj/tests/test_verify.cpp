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

#include "pdov/errors.hpp"
#include "pdov/verify.hpp"

namespace pdov {
namespace {

TEST(Verify, EverySuitePasses) {
  const auto results = run_suite("all");
  EXPECT_GE(results.size(), suite_names().size());
  for (const auto& r : results) {
    EXPECT_TRUE(r.passed()) << r.suite << ": " << r.check << " margin " << r.worst_margin;
  }
}

TEST(Verify, DeterministicForFixedSeed) {
  VerifyOptions opts;
  opts.seed = 42;
  opts.mc_samples = 20'000;
  const auto a = run_suite("mc-oracle", opts);
  const auto b = run_suite("mc-oracle", opts);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].worst_margin, b[i].worst_margin);
  }
}

TEST(Verify, UnknownSuiteIsRejected) { EXPECT_THROW(run_suite("nope"), DomainError); }

TEST(Verify, GeneratedConfigurationsAreValid) {
  CounterRng rng(3, 3);
  for (int n = 1; n <= 10; ++n) {
    const Configuration x = random_level_config(n, rng);
    EXPECT_TRUE(x.in_level(n));
    const Configuration y = perturbed_uniform(n, 0.3, rng);
    EXPECT_TRUE(y.in_level(n));
  }
  EXPECT_THROW(perturbed_uniform(2, 1.5, rng), DomainError);
}

}  // namespace
}  // namespace pdov
