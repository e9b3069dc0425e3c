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

#include "pdov/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "pdov/errors.hpp"

namespace pdov {

Configuration::Configuration(std::vector<double> entries) : entries_(std::move(entries)) {
  double mass = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double v = entries_[i];
    detail::require(std::isfinite(v) && v >= 0.0, "configuration entries must be finite and >= 0");
    detail::require(i == 0 || v <= entries_[i - 1], "configuration entries must be descending");
    mass += v;
    if (v > 0.0) {
      ++positive_count_;
    }
  }
  detail::require(mass <= 1.0 + kMassTolerance, "configuration mass exceeds 1");
  total_mass_ = mass;
}

Configuration Configuration::from_unsorted(std::vector<double> entries) {
  std::sort(entries.begin(), entries.end(), std::greater<>());
  return Configuration(std::move(entries));
}

bool Configuration::in_level(int n) const {
  return positive_count_ == n && std::abs(total_mass_ - 1.0) <= kMassTolerance;
}

double phi2(const Configuration& x) {
  double s = 0.0;
  for (double v : x.entries()) {
    s += v * v;
  }
  return s;
}

double j_rate(const Configuration& x) {
  const int n = x.positive_count();
  if (n == 0 || !x.in_level(n)) {
    return std::numeric_limits<double>::infinity();
  }
  return n - 1.0;
}

InfTerm inf_term(double lambda) {
  detail::require(lambda > 0.0 && std::isfinite(lambda), "lambda must be finite and > 0");
  const int window = static_cast<int>(std::ceil(std::sqrt(lambda))) + 2;
  std::vector<double> values(window);
  for (int n = 1; n <= window; ++n) {
    values[n - 1] = lambda / n + n - 1.0;
  }
  const double best = *std::min_element(values.begin(), values.end());
  InfTerm result{best, {}};
  for (int n = 1; n <= window; ++n) {
    if (values[n - 1] - best <= 1e-12 * std::max(1.0, std::abs(best))) {
      result.argmin.push_back(n);
    }
  }
  return result;
}

Rational inf_term_exact(Rational lambda) {
  detail::require(lambda > 0, "lambda must be > 0");
  const double approx = boost::rational_cast<double>(lambda);
  const int window = static_cast<int>(std::ceil(std::sqrt(approx))) + 2;
  Rational best = lambda;  // n = 1
  for (int n = 2; n <= window; ++n) {
    best = std::min(best, lambda / n + Rational(n - 1));
  }
  return best;
}

double s_rate(const Configuration& x, double lambda) {
  const double j = j_rate(x);
  if (std::isinf(j)) {
    return j;
  }
  return j + lambda * phi2(x) - inf_term(lambda).value;
}

Rational s_rate_uniform_exact(int k, Rational lambda) {
  detail::require(k >= 1, "uniform configuration requires k >= 1");
  // J(c_k) = k - 1 and phi2(c_k) = 1/k.
  return Rational(k - 1) + lambda / k - inf_term_exact(lambda);
}

double metric_d(const Configuration& x, const Configuration& y) {
  const std::size_t n = std::max(x.size(), y.size());
  double d = 0.0;
  double scale = 0.5;
  for (std::size_t i = 0; i < n; ++i) {
    d += std::abs(x[i] - y[i]) * scale;
    scale *= 0.5;
  }
  return d;
}

namespace {

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

void check_alpha(double alpha) {
  detail::require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
}

}  // namespace

double rate_I1(double x, double alpha) {
  check_alpha(alpha);
  detail::require(x >= 0.0, "rate_I1 requires x >= 0");
  return xlogy(x, x) - (x + 1.0) * std::log1p(x) - (x * std::log1p(-alpha) + std::log(alpha));
}

double rate_I2(double x, double alpha) {
  check_alpha(alpha);
  detail::require(x >= 0.0 && x <= 1.0, "rate_I2 requires x in [0, 1]");
  return xlogy(x, x / alpha) + xlogy(1.0 - x, (1.0 - x) / (1.0 - alpha));
}

Configuration uniform_config(int k) {
  detail::require(k >= 1, "uniform configuration requires k >= 1");
  return Configuration(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

}  // namespace pdov
