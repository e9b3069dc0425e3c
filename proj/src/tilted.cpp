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

#include "pdov/tilted.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pdov/errors.hpp"
#include "pdov/ldp.hpp"
#include "pdov/moments.hpp"

namespace pdov {

namespace {

constexpr double kMaxAbsT = 50.0;
// Outer alternating series: allowed absolute error relative to the result.
constexpr double kOuterTolerance = 1e-10;

double log_factorial(int k) {
  static const std::vector<double> table = [] {
    std::vector<double> t(1 << 15);
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    return t;
  }();
  return static_cast<std::size_t>(k) < table.size() ? table[k] : std::lgamma(k + 1.0);
}

// log of sum_{k > last} x^k / k!
LogNum poisson_tail(double x, int last) {
  if (x == 0.0) {
    return LogNum::zero();
  }
  const int next = last + 1;
  if (next + 1 <= x) {
    return LogNum::from_log(x);
  }
  return LogNum::from_log(next * std::log(x) - log_factorial(next) - std::log1p(-x / (next + 1)));
}

struct ColumnSums {
  LogNum value;
  LogNum bound;
};

// sum over l in [l_lo, l_hi] of theta^l sum_{k>=l} x^k/k! A_{k+shift,l}
ColumnSums weighted_column_sums(const CoeffTable& table, double x, double log_theta, int l_lo, int l_hi,
                                int shift) {
  LogSumAccumulator value;
  LogSumAccumulator bound;
  for (int l = l_lo; l <= l_hi; ++l) {
    const auto col = table.column(l);
    if (static_cast<int>(col.size()) <= shift) {
      // Every term of this column lies beyond the table.
      bound.add(LogNum::from_log(l * log_theta) * column_tail_cap(table, l) * poisson_tail(x, l - 1));
      continue;
    }
    const SeriesSum s = exp_series_sum(x, col.subspan(static_cast<std::size_t>(shift)), l,
                                       column_tail_cap(table, l));
    const LogNum weight = LogNum::from_log(l * log_theta);
    value.add(weight * s.value);
    bound.add(weight * s.truncation_bound);
  }
  return {value.result(), bound.result()};
}

LogNum certified(const ColumnSums& s, const char* what) {
  if (s.value.is_zero() || s.bound.log() > s.value.log() + std::log(kSeriesTolerance)) {
    throw PrecisionError(std::string(what) + ": truncation error exceeds tolerance; increase kmax");
  }
  return s.value;
}

void check_ratio_spec(const SelectionSpec& spec, int n) {
  detail::require(n >= 0, "order n must be >= 0");
  detail::require(spec.lambda() >= 1.0, "K ratios need lambda >= 1 ([lambda] = 0 leaves no columns)");
  detail::require(spec.theta() < 1.0, "K ratios need theta < 1 (x = 0 empties both sums)");
}

struct RatioParts {
  LogNum numerator;
  LogNum denominator;
};

RatioParts ratio_parts(const CoeffTable& table, const SelectionSpec& spec, int n) {
  const double log_theta = std::log(spec.theta());
  const int top = std::min(spec.floor_lambda(), table.kmax());
  const LogNum num = certified(weighted_column_sums(table, spec.x(), log_theta, 1, top, n), "K numerator");
  const LogNum den = certified(weighted_column_sums(table, spec.x(), log_theta, 1, top, 0), "K denominator");
  return {num, den};
}

int ratio_kmax(const SelectionSpec& spec, int n) {
  return std::max(series_kmax(spec.x()) + n, spec.floor_lambda() + n + 1);
}

// sum_m y^m/m! m_{m+shift} from log moments m_0..m_J.
LogNum moment_series(const std::vector<LogNum>& logm, double y, int shift) {
  const auto span = std::span<const LogNum>(logm).subspan(static_cast<std::size_t>(shift));
  // Moments decrease in the order, so the last one dominates the rest.
  return exp_series(y, span, 0, kSeriesTolerance, logm.back());
}

}  // namespace

SeriesSum exp_series_sum(double x, std::span<const LogNum> coeffs, int start, LogNum tail_cap,
                         double early_stop_tol) {
  detail::require(std::isfinite(x) && x >= 0.0, "exp_series requires finite x >= 0");
  detail::require(start >= 0, "exp_series start index must be >= 0");
  SeriesSum out;
  if (coeffs.empty()) {
    out.truncation_bound = tail_cap * poisson_tail(x, start - 1);
    return out;
  }
  if (x == 0.0) {
    out.value = start == 0 ? coeffs[0] : LogNum::zero();
    out.terms_used = 1;
    return out;
  }
  // suffix[i] = max(a_i, ..., a_end, tail_cap)
  std::vector<LogNum> suffix(coeffs.size() + 1);
  suffix[coeffs.size()] = tail_cap;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    suffix[i] = std::max(suffix[i + 1], coeffs[i]);
  }
  const double log_x = std::log(x);
  const double log_tol = std::log(early_stop_tol);
  LogSumAccumulator acc;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int k = start + static_cast<int>(i);
    if (!coeffs[i].is_zero()) {
      acc.add(LogNum::from_log(coeffs[i].log() + k * log_x - log_factorial(k)));
    }
    out.terms_used = static_cast<int>(i) + 1;
    if (k > x && i + 1 < coeffs.size()) {
      const LogNum remaining = suffix[i + 1] * poisson_tail(x, k);
      const LogNum partial = acc.result();
      if (remaining.is_zero() || (!partial.is_zero() && remaining.log() <= partial.log() + log_tol)) {
        out.value = partial;
        out.truncation_bound = remaining;
        return out;
      }
    }
  }
  out.value = acc.result();
  out.truncation_bound = tail_cap * poisson_tail(x, start + static_cast<int>(coeffs.size()) - 1);
  return out;
}

LogNum exp_series(double x, std::span<const LogNum> coeffs, int start, double rel_tol, LogNum tail_cap) {
  const SeriesSum s = exp_series_sum(x, coeffs, start, tail_cap, rel_tol);
  if (s.truncation_bound.is_zero()) {
    return s.value;
  }
  if (s.value.is_zero() || s.truncation_bound.log() > s.value.log() + std::log(rel_tol)) {
    throw PrecisionError("exponential series truncated above tolerance; supply more coefficients");
  }
  return s.value;
}

LogNum column_tail_cap(const CoeffTable& table, int l) {
  const auto col = table.column(l);
  if (col.size() >= 2 && col.back() < col[col.size() - 2]) {
    return col.back();
  }
  return LogNum::from_log((2 - l) * std::numbers::ln2);
}

double k_ratio(const SelectionSpec& spec, int n, bool use_limit_coeffs) {
  check_ratio_spec(spec, n);
  if (n == 0) {
    return 1.0;
  }
  const int kmax = ratio_kmax(spec, n);
  const CoeffTable table = use_limit_coeffs ? build_limit_table(kmax) : build_coeff_table(spec.theta(), kmax);
  const RatioParts parts = ratio_parts(table, spec, n);
  return (parts.numerator / parts.denominator).value();
}

ProofDiagnostics proof_diagnostics(const SelectionSpec& spec, int n) {
  check_ratio_spec(spec, n);
  const int kmax = ratio_kmax(spec, n);
  const RatioParts exact = ratio_parts(build_coeff_table(spec.theta(), kmax), spec, n);
  const RatioParts limit = ratio_parts(build_limit_table(kmax), spec, n);
  ProofDiagnostics d;
  d.k = (exact.numerator / exact.denominator).value();
  d.k_tilde = (limit.numerator / limit.denominator).value();
  // Differences of nearly equal positive sums, taken through expm1 of the log gap.
  d.f = d.k_tilde * std::expm1(exact.numerator.log() - limit.numerator.log());
  d.g = std::expm1(exact.denominator.log() - limit.denominator.log());
  return d;
}

TailBound tail_bound(const SelectionSpec& spec) {
  const int first = spec.floor_lambda() + 1;
  const double theta = spec.theta();
  TailBound out;
  out.analytic_bound = 4.0 * std::pow(theta, first - spec.lambda()) / std::ldexp(1.0, first) * 2.0 / (2.0 - theta);
  const int kmax = std::max(series_kmax(spec.x()), first + 1);
  const CoeffTable table = build_coeff_table(theta, kmax);
  const ColumnSums sums = weighted_column_sums(table, spec.x(), std::log(theta), first, kmax, 0);
  // Columns l > kmax start at k = l > kmax: bounded by theta^l 2^{2-l} e^x each.
  const LogNum beyond = LogNum::from_log((kmax + 1) * std::log(theta / 2.0) + 2.0 * std::numbers::ln2 + spec.x() -
                                         std::log1p(-theta / 2.0));
  ColumnSums total{sums.value, sums.bound + beyond};
  out.computed_tail = certified(total, "tail sum").value();
  return out;
}

double mgf(const SelectionSpec& spec, double t, int kmax, MgfRoute route) {
  detail::require(std::isfinite(t) && std::abs(t) <= kMaxAbsT, "mgf requires |t| <= 50");
  detail::require(kmax >= 0, "kmax must be >= 0");
  const double x = spec.x();
  const double y = x - t;
  if (route == MgfRoute::kAuto) {
    route = y >= 0.0 ? MgfRoute::kShifted : MgfRoute::kOuterSeries;
  }

  if (route == MgfRoute::kShifted) {
    detail::require(y >= 0.0, "shifted mgf route needs t <= lambda log(1/theta)");
    const int size = kmax > 0 ? kmax : series_kmax(std::max(x, y));
    const auto logm = log_moments_from_table(build_coeff_table(spec.theta(), size));
    const LogNum shifted = moment_series(logm, y, 0);
    const LogNum base = moment_series(logm, x, 0);
    return std::exp(t + shifted.log() - base.log());
  }

  const int outer_terms = series_kmax(std::abs(t));
  const int size = kmax > 0 ? kmax : series_kmax(x) + outer_terms;
  detail::require(size > outer_terms, "kmax too small for the outer mgf series");
  const auto logm = log_moments_from_table(build_coeff_table(spec.theta(), size));
  const LogNum base = moment_series(logm, x, 0);

  // Neumaier-compensated sum of (-t)^n/n! R_n.
  double sum = 1.0;
  double compensation = 0.0;
  double abs_sum = 1.0;
  double log_pow = 0.0;  // log(|t|^n / n!)
  int n = 1;
  for (; n <= outer_terms; ++n) {
    if (t == 0.0) {
      break;
    }
    log_pow += std::log(std::abs(t)) - std::log(static_cast<double>(n));
    const double ratio = std::exp(moment_series(logm, x, n).log() - base.log());
    const double magnitude = std::exp(log_pow) * ratio;
    const double term = (t > 0.0 && n % 2 == 1) ? -magnitude : magnitude;
    const double next = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
    abs_sum += magnitude;
  }
  sum += compensation;
  const double outer_tail = t == 0.0 ? 0.0 : poisson_tail(std::abs(t), n - 1).value();
  const double error = 8.0 * std::numeric_limits<double>::epsilon() * abs_sum + outer_tail;
  if (!(sum > 0.0) || error > kOuterTolerance * sum) {
    throw PrecisionError("outer mgf series cancels below tolerance at this t; use t <= lambda log(1/theta)");
  }
  return std::exp(t) * sum;
}

double tilted_mean_heterozygosity(const SelectionSpec& spec) {
  const auto logm = log_moments_from_table(build_coeff_table(spec.theta(), series_kmax(spec.x()) + 1));
  return std::exp(moment_series(logm, spec.x(), 1).log() - moment_series(logm, spec.x(), 0).log());
}

PhaseResult classify_phase(double lambda) {
  detail::require(lambda > 0.0 && std::isfinite(lambda), "lambda must be finite and > 0");
  int u = std::max(1, static_cast<int>(std::ceil((std::sqrt(1.0 + 4.0 * lambda) - 1.0) / 2.0)));
  while (static_cast<double>(u) * (u + 1) < lambda) {
    ++u;
  }
  while (u > 1 && static_cast<double>(u) * (u - 1) >= lambda) {
    --u;
  }
  return PhaseResult{lambda, u, 1.0 / u, uniform_config(u)};
}

double limit_mgf(double lambda, double t) { return std::exp(t / classify_phase(lambda).u); }

}  // namespace pdov
