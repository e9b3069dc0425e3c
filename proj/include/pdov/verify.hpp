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

#ifndef PDOV_VERIFY_HPP
#define PDOV_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdov/configuration.hpp"
#include "pdov/rng.hpp"

namespace pdov {

/// One checked inequality family. worst_margin is the smallest slack seen
/// (negative means violated); its scale depends on the check.
struct CheckResult {
  std::string suite;
  std::string check;
  double worst_margin = 0.0;
  std::int64_t evaluated = 0;
  std::int64_t violations = 0;
  [[nodiscard]] bool passed() const { return violations == 0 && evaluated > 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::int64_t mc_samples = 200'000;
  int random_configs = 10'000;
};

/// Suite names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite in order). Unknown names throw DomainError.
std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& options = {});

/// Uniform draw from the level set L_n (flat Dirichlet, sorted descending).
Configuration random_level_config(int n, CounterRng& rng);

/// (1 - eta) c_n + eta D with D flat Dirichlet on n entries, sorted descending.
Configuration perturbed_uniform(int n, double eta, CounterRng& rng);

}  // namespace pdov

#endif  // PDOV_VERIFY_HPP
