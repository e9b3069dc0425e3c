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

#ifndef PDOV_SELECTION_HPP
#define PDOV_SELECTION_HPP

#include <cmath>

#include "pdov/errors.hpp"

namespace pdov {

/// Selection scale lambda and mutation rate theta of the tilted stationary
/// law pi_{lambda,theta}(dx) proportional to exp{sigma phi2(x)} PD(theta)(dx),
/// with sigma = lambda log theta <= 0.
class SelectionSpec {
 public:
  SelectionSpec(double lambda, double theta) : lambda_(lambda), theta_(theta) {
    detail::require(lambda > 0.0 && std::isfinite(lambda), "lambda must be finite and > 0");
    detail::require(theta > 0.0 && theta <= 1.0, "theta must lie in (0, 1]");
  }

  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] double theta() const { return theta_; }

  /// sigma = lambda log theta.
  [[nodiscard]] double sigma() const { return lambda_ * std::log(theta_); }

  /// x = lambda log(1/theta) = -sigma, the argument of every exponential series.
  [[nodiscard]] double x() const { return -sigma(); }

  /// [lambda], the number of leading coefficient columns.
  [[nodiscard]] int floor_lambda() const { return static_cast<int>(std::floor(lambda_)); }

 private:
  double lambda_;
  double theta_;
};

}  // namespace pdov

#endif  // PDOV_SELECTION_HPP
