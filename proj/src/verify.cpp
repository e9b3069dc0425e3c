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

#include "pdov/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdov/coefficients.hpp"
#include "pdov/errors.hpp"
#include "pdov/ldp.hpp"
#include "pdov/mc.hpp"
#include "pdov/moments.hpp"
#include "pdov/tilted.hpp"

namespace pdov {

namespace {

// Relative slack for inequalities that hold with equality at some grid points.
constexpr double kRelSlack = 1e-12;

class Tally {
 public:
  Tally(std::string suite, std::string check) {
    result_.suite = std::move(suite);
    result_.check = std::move(check);
    result_.worst_margin = std::numeric_limits<double>::infinity();
  }
  // Records lhs <= rhs with relative slack.
  void leq(double lhs, double rhs) { margin((rhs - lhs) / std::max(std::abs(rhs), 1e-300) + kRelSlack); }
  void margin(double m) {
    ++result_.evaluated;
    result_.worst_margin = std::min(result_.worst_margin, m);
    if (!(m >= 0.0)) {
      ++result_.violations;
    }
  }
  CheckResult done() const { return result_; }

 private:
  CheckResult result_;
};

const std::vector<double> kThetaGrid = {0.1, 0.25, 0.5, 0.75, 1.0};

std::vector<CheckResult> suite_ubmh(const VerifyOptions&) {
  constexpr int kmax = 200;
  const CoeffTable limit = build_limit_table(kmax);
  Tally cap("ubmh", "A_{k,p} <= 2^(2-p)");
  Tally lower("ubmh", "2^(-p) A_{k,p} <= A_{k,p}(theta)");
  Tally upper("ubmh", "A_{k,p}(theta) <= A_{k,p}");
  Tally gap("ubmh", "|A_{k,p}(theta) - A_{k,p}| <= theta p A_{k,p}");
  for (int k = 1; k <= kmax; ++k) {
    for (int p = 1; p <= k; ++p) {
      cap.leq(limit.at(k, p).log(), (2 - p) * std::log(2.0));
    }
  }
  for (double theta : kThetaGrid) {
    const CoeffTable table = build_coeff_table(theta, kmax);
    for (int k = 1; k <= kmax; ++k) {
      for (int p = 1; p <= k; ++p) {
        const double a = limit.at(k, p).log();
        const double at = table.at(k, p).log();
        // Compared through exp of log differences so that tiny entries keep full relative precision.
        lower.leq(std::exp(a - at - p * std::log(2.0)), 1.0);
        upper.leq(std::exp(at - a), 1.0);
        gap.leq(std::abs(std::expm1(at - a)), theta * p);
      }
    }
  }
  Tally ratio("ubmh", "B_{k,l+1}/B_{k,l} = (k+l)/(2(l+1))");
  Tally partial("ubmh", "sum_{l=p}^{k-1} B_{k,l} < 1/2");
  for (int k = 3; k <= kmax; ++k) {
    for (int l = 1; l + 1 <= k - 1; ++l) {
      const double r = std::exp(b_term(k, l + 1).log() - b_term(k, l).log());
      const double expected = (k + l) / (2.0 * (l + 1));
      ratio.margin(1e-10 - std::abs(r / expected - 1.0));
    }
    double suffix = 0.0;
    for (int p = k - 1; p >= 2; --p) {
      suffix += b_term(k, p).value();
      partial.margin(0.5 - suffix);
    }
  }
  return {cap.done(), lower.done(), upper.done(), gap.done(), ratio.done(), partial.done()};
}

std::vector<CheckResult> suite_coef1(const VerifyOptions&) {
  const CoeffTable limit = build_limit_table(400);
  Tally close("coef1", "|A_{400,p}/asymptotic - 1| < 0.1, p = 1..3");
  Tally trend("coef1", "|A_{k,p}/asymptotic - 1| decreases over k = 100, 200, 400");
  for (int p = 1; p <= 3; ++p) {
    double previous = std::numeric_limits<double>::infinity();
    for (int k : {100, 200, 400}) {
      const double err = std::abs(std::expm1(limit.at(k, p).log() - asymptotic_A(k, p).log()));
      trend.margin(previous - err);
      previous = err;
      if (k == 400) {
        close.margin(0.1 - err);
      }
    }
  }
  return {close.done(), trend.done()};
}

std::vector<CheckResult> suite_coef2(const VerifyOptions&) {
  const CoeffTable limit = build_limit_table(400);
  Tally trend("coef2", "|C_{k,l}/asymptotic - 1| decreases over k = 100, 200, 400");
  Tally close("coef2", "|C_{400,1}/asymptotic - 1| < 0.1 at lambda = 6");
  const std::vector<std::pair<int, double>> cases = {{1, 6.0}, {2, 6.0}, {1, 4.0}};
  for (auto [l, lambda] : cases) {
    double previous = std::numeric_limits<double>::infinity();
    for (int k : {100, 200, 400}) {
      const double err =
          std::abs(std::expm1(c_combined(k, l, lambda, limit).log() - asymptotic_C(k, l, lambda).log()));
      trend.margin(previous - err);
      previous = err;
      if (k == 400 && l == 1 && lambda == 6.0) {
        close.margin(0.1 - err);
      }
    }
  }
  return {trend.done(), close.done()};
}

std::vector<CheckResult> suite_ft(const VerifyOptions&) {
  Tally t("ft", "computed tail <= analytic bound");
  for (double lambda : {1.0, 2.5, 6.0, 6.5, 12.0}) {
    for (double theta : {1e-2, 1e-4, 1e-6}) {
      const TailBound b = tail_bound(SelectionSpec(lambda, theta));
      t.margin((b.analytic_bound - b.computed_tail) / b.analytic_bound);
    }
  }
  return {t.done()};
}

std::vector<CheckResult> suite_ml(const VerifyOptions&) {
  // b_k = A_{k,1}; a_k = 3 b_k from k = 10 on, a_k = b_k before.
  constexpr double c = 3.0;
  const int kmax = series_kmax(200.0);
  const CoeffTable limit = build_limit_table(kmax);
  const auto b = limit.column(1);
  std::vector<LogNum> a(b.begin(), b.end());
  for (std::size_t i = 9; i < a.size(); ++i) {
    a[i] *= LogNum::from_value(c);
  }
  const LogNum cap_b = column_tail_cap(limit, 1);
  Tally trend("ml", "|series ratio - c| decreases over x = 50, 100, 200");
  double previous = std::numeric_limits<double>::infinity();
  for (double x : {50.0, 100.0, 200.0}) {
    const LogNum sa = exp_series(x, a, 1, kSeriesTolerance, cap_b * LogNum::from_value(c));
    const LogNum sb = exp_series(x, b, 1, kSeriesTolerance, cap_b);
    const double err = std::abs(std::exp(sa.log() - sb.log()) - c);
    trend.margin(previous - err);
    previous = err;
  }
  Tally exact("ml", "sum x^k/k! = e^x at x = 300");
  const std::vector<LogNum> ones(static_cast<std::size_t>(series_kmax(300.0)), LogNum::one());
  const LogNum e = exp_series(300.0, ones, 0, kSeriesTolerance, LogNum::one());
  exact.margin(1e-12 - std::abs(e.log() - 300.0) / 300.0);
  return {trend.done(), exact.done()};
}

std::vector<CheckResult> suite_phase(const VerifyOptions&) {
  Tally grid("phase", "u(u-1) < lambda <= u(u+1) on the 0.01 grid over (0, 13]");
  Tally critical("phase", "critical lambda = u(u+1) maps to u, lambda + 1e-9 to u + 1");
  for (int i = 1; i <= 1300; ++i) {
    const double lambda = i / 100.0;
    const int u = classify_phase(lambda).u;
    const int expected = lambda <= 2.0 ? 1 : lambda <= 6.0 ? 2 : lambda <= 12.0 ? 3 : 4;
    grid.margin(u == expected ? 0.0 : -1.0);
  }
  for (int u = 1; u <= 50; ++u) {
    const double lambda = static_cast<double>(u) * (u + 1);
    critical.margin(classify_phase(lambda).u == u && classify_phase(lambda + 1e-9).u == u + 1 ? 0.0 : -1.0);
  }
  return {grid.done(), critical.done()};
}

std::vector<CheckResult> suite_inclusion(const VerifyOptions& options) {
  Tally inclusion("inclusion", "S < delta and |phi2 - 1/k| < delta imply d(x, c_k) < delta");
  Tally zeros("inclusion", "S(c_k) = S(c_{k+1}) = 0 exactly at lambda = k(k+1)");
  Tally gap("inclusion", "S(c_n) >= 2/(k+2) exactly for n not in {k, k+1}, n <= 8");
  Tally nonneg("inclusion", "S_lambda >= 0 on random configurations");
  Tally level_gap("inclusion", "S_lambda >= 2/(k+2) on random L_n, n not in {k, k+1}");
  std::int64_t hits = 0;
  for (int k = 1; k <= 3; ++k) {
    const double lambda = static_cast<double>(k) * (k + 1);
    const Rational exact_lambda(k * (k + 1));
    const double delta = 0.9 / (k * (k + 1) + 1);
    const Configuration ck = uniform_config(k);
    CounterRng rng(options.seed, static_cast<std::uint64_t>(k));
    for (int i = 0; i < options.random_configs; ++i) {
      const int n = (i % 2 == 0) ? k : k + 1;
      const Configuration x = perturbed_uniform(n, rng.uniform_open_closed() * 0.5, rng);
      const double s = s_rate(x, lambda);
      if (s < delta && std::abs(phi2(x) - 1.0 / k) < delta) {
        ++hits;
        inclusion.margin(delta - metric_d(x, ck));
      }
    }
    zeros.margin(s_rate_uniform_exact(k, exact_lambda) == Rational(0) &&
                         s_rate_uniform_exact(k + 1, exact_lambda) == Rational(0)
                     ? 0.0
                     : -1.0);
    for (int n = 1; n <= 8; ++n) {
      if (n == k || n == k + 1) {
        continue;
      }
      const Rational s = s_rate_uniform_exact(n, exact_lambda);
      const Rational bound(2, k + 2);
      gap.margin(s >= bound ? boost::rational_cast<double>(s - bound) : -1.0);
    }
    for (int n = 1; n <= 8; ++n) {
      for (int i = 0; i < options.random_configs / 8; ++i) {
        const Configuration x = random_level_config(n, rng);
        const double s = s_rate(x, lambda);
        nonneg.margin(s + 1e-12);
        if (n != k && n != k + 1) {
          level_gap.margin(s - 2.0 / (k + 2) + 1e-12);
        }
      }
    }
  }
  CheckResult inc = inclusion.done();
  if (hits == 0) {
    inc.evaluated = 0;
  }
  return {inc, zeros.done(), gap.done(), nonneg.done(), level_gap.done()};
}

std::vector<CheckResult> suite_mc_oracle(const VerifyOptions& options) {
  Tally moments("mc-oracle", "weighted (1-H2)^k at theta = 1 within 4 se of m_k, k <= 4");
  for (int k = 1; k <= 4; ++k) {
    const TiltedEstimate est = tilted_estimate_h2(
        SelectionSpec(6.0, 1.0), [k](double h) { return std::pow(1.0 - h, k); }, options.mc_samples,
        options.seed + static_cast<std::uint64_t>(k));
    moments.margin(4.0 - std::abs(est.value - moment_via_recursion(1.0, k)) / est.std_error);
  }
  Tally mgf_check("mc-oracle", "mgf(6, 0.3, 1) within 4 se of the weighted e^H2 estimate");
  const SelectionSpec spec(6.0, 0.3);
  const TiltedEstimate est =
      tilted_estimate_h2(spec, [](double h) { return std::exp(h); }, options.mc_samples, options.seed);
  mgf_check.margin(4.0 - std::abs(est.value - mgf(spec, 1.0)) / est.std_error);
  return {moments.done(), mgf_check.done()};
}

std::vector<double> flat_dirichlet(int n, CounterRng& rng) {
  std::vector<double> e(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& v : e) {
    v = -std::log(rng.uniform_open_closed());
    total += v;
  }
  if (total == 0.0) {
    std::fill(e.begin(), e.end(), 1.0 / n);
    return e;
  }
  for (double& v : e) {
    v /= total;
  }
  return e;
}

}  // namespace

Configuration random_level_config(int n, CounterRng& rng) {
  detail::require(n >= 1, "level n must be >= 1");
  return Configuration::from_unsorted(flat_dirichlet(n, rng));
}

Configuration perturbed_uniform(int n, double eta, CounterRng& rng) {
  detail::require(n >= 1, "level n must be >= 1");
  detail::require(eta >= 0.0 && eta <= 1.0, "perturbation weight must lie in [0, 1]");
  std::vector<double> d = flat_dirichlet(n, rng);
  for (double& v : d) {
    v = (1.0 - eta) / n + eta * v;
  }
  return Configuration::from_unsorted(std::move(d));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ubmh", "coef1", "coef2", "ft",
                                                 "ml",   "phase", "inclusion", "mc-oracle"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, options);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (name == "ubmh") return suite_ubmh(options);
  if (name == "coef1") return suite_coef1(options);
  if (name == "coef2") return suite_coef2(options);
  if (name == "ft") return suite_ft(options);
  if (name == "ml") return suite_ml(options);
  if (name == "phase") return suite_phase(options);
  if (name == "inclusion") return suite_inclusion(options);
  if (name == "mc-oracle") return suite_mc_oracle(options);
  throw DomainError("unknown verify suite: " + name);
}

}  // namespace pdov
