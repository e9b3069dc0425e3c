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

#ifndef PDOV_LOGNUM_HPP
#define PDOV_LOGNUM_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>

#include "pdov/errors.hpp"

namespace pdov {

/// A nonnegative real stored as its natural logarithm.
///
/// Negative infinity encodes an exact zero. Products are sums of logs and
/// sums go through log-sum-exp, so values far outside the double range
/// (terms like x^k / k! with x in the hundreds) stay representable.
class LogNum {
 public:
  constexpr LogNum() = default;

  static constexpr LogNum zero() { return LogNum{}; }
  static constexpr LogNum one() { return from_log(0.0); }

  static constexpr LogNum from_log(double log_value) {
    LogNum n;
    n.log_ = log_value;
    return n;
  }

  static LogNum from_value(double value) {
    detail::require(value >= 0.0, "LogNum requires a nonnegative value");
    return from_log(std::log(value));
  }

  [[nodiscard]] constexpr double log() const { return log_; }
  [[nodiscard]] double value() const { return std::exp(log_); }
  [[nodiscard]] constexpr bool is_zero() const {
    return log_ == -std::numeric_limits<double>::infinity();
  }

  friend constexpr LogNum operator*(LogNum a, LogNum b) {
    if (a.is_zero() || b.is_zero()) {
      return zero();
    }
    return from_log(a.log_ + b.log_);
  }

  friend LogNum operator/(LogNum a, LogNum b) {
    detail::require(!b.is_zero(), "LogNum division by zero");
    if (a.is_zero()) {
      return zero();
    }
    return from_log(a.log_ - b.log_);
  }

  friend LogNum operator+(LogNum a, LogNum b) {
    if (a.is_zero()) {
      return b;
    }
    if (b.is_zero()) {
      return a;
    }
    const double hi = std::max(a.log_, b.log_);
    const double lo = std::min(a.log_, b.log_);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  LogNum& operator*=(LogNum other) { return *this = *this * other; }
  LogNum& operator+=(LogNum other) { return *this = *this + other; }

  /// x^p for real p; zero stays zero for p > 0.
  [[nodiscard]] LogNum pow(double p) const {
    if (is_zero()) {
      return p == 0.0 ? one() : zero();
    }
    return from_log(log_ * p);
  }

  friend constexpr auto operator<=>(LogNum a, LogNum b) { return a.log_ <=> b.log_; }
  friend constexpr bool operator==(LogNum a, LogNum b) { return a.log_ == b.log_; }

 private:
  double log_ = -std::numeric_limits<double>::infinity();
};

/// Streaming log-sum-exp with a running maximum. All summands are
/// nonnegative, so there is no cancellation to compensate.
class LogSumAccumulator {
 public:
  void add(LogNum term) {
    if (term.is_zero()) {
      return;
    }
    const double l = term.log();
    if (scaled_sum_ == 0.0) {
      max_log_ = l;
      scaled_sum_ = 1.0;
    } else if (l <= max_log_) {
      scaled_sum_ += std::exp(l - max_log_);
    } else {
      scaled_sum_ = scaled_sum_ * std::exp(max_log_ - l) + 1.0;
      max_log_ = l;
    }
  }

  [[nodiscard]] LogNum result() const {
    if (scaled_sum_ == 0.0) {
      return LogNum::zero();
    }
    return LogNum::from_log(max_log_ + std::log(scaled_sum_));
  }

 private:
  double max_log_ = -std::numeric_limits<double>::infinity();
  double scaled_sum_ = 0.0;
};

}  // namespace pdov

#endif  // PDOV_LOGNUM_HPP
