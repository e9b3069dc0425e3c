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

#include "pdov/coefficients.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <ostream>

#include "pdov/errors.hpp"
#include "pdov/format.hpp"
#include "pdov/parallel.hpp"

namespace pdov {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_table_args(double theta, int kmax) {
  detail::require(kmax >= 1, "kmax must be >= 1");
  detail::require(theta >= 0.0 && theta <= 1.0, "theta must lie in [0, 1]");
}

// Log-gamma values needed by the recursion, precomputed once so the parallel
// section never touches lgamma (glibc's lgamma writes the global signgam).
struct GammaCache {
  GammaCache(double theta, int kmax) : theta(theta) {
    const int n = 2 * kmax + 2;
    lg_int.resize(n + 1);
    lg_theta.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
      lg_int[j] = j == 0 ? 0.0 : std::lgamma(static_cast<double>(j));
      // lgamma(0 + theta) is only requested for theta > 0.
      lg_theta[j] = (j == 0 && theta == 0.0) ? 0.0 : std::lgamma(j + theta);
    }
  }

  // log[(2k+theta)/(2k) * 2^k k! / Gamma(2k+1+theta)]
  [[nodiscard]] double row_prefactor(int k) const {
    return std::log1p(theta / (2.0 * k)) + k * kLn2 + lg_int[k + 1] - lg_theta[2 * k + 1];
  }

  // log of the recursion weight (2k+theta)/(2k) 2^k k! Gamma(k+l+theta) / (2^l l! Gamma(2k+1+theta))
  [[nodiscard]] double weight(int k, int l) const {
    return row_prefactor(k) - l * kLn2 - lg_int[l + 1] + lg_theta[k + l];
  }

  double theta;
  std::vector<double> lg_int;
  std::vector<double> lg_theta;
};

// A_{k,p} for one k given the finished column p-1 (entries k' = p-1..kmax).
LogNum recursion_entry(const GammaCache& gc, const std::vector<LogNum>& prev, int k, int p) {
  LogSumAccumulator acc;
  for (int l = p - 1; l <= k - 1; ++l) {
    acc.add(LogNum::from_log(gc.weight(k, l)) * prev[l - (p - 1)]);
  }
  return acc.result();
}

void fill_first_column(const GammaCache& gc, std::vector<LogNum>& col, int kmax) {
  col.resize(kmax);
  for (int k = 1; k <= kmax; ++k) {
    col[k - 1] = LogNum::from_log(gc.row_prefactor(k) + gc.lg_theta[k]);
  }
}

}  // namespace

CoeffTable::CoeffTable(double theta, int kmax) : theta_(theta), kmax_(kmax), columns_(kmax) {}

LogNum CoeffTable::at(int k, int l) const {
  detail::require(l >= 1 && l <= k && k <= kmax_, "coefficient index out of range");
  return columns_[l - 1][k - l];
}

std::span<const LogNum> CoeffTable::column(int l) const {
  detail::require(l >= 1 && l <= kmax_, "coefficient column out of range");
  return columns_[l - 1];
}

CoeffTable build_coeff_table(double theta, int kmax) {
  check_table_args(theta, kmax);
  CoeffTable table(theta, kmax);
  const GammaCache gc(theta, kmax);
  fill_first_column(gc, table.columns_[0], kmax);
  const int threads = configured_threads();
  for (int p = 2; p <= kmax; ++p) {
    const auto& prev = table.columns_[p - 2];
    auto& col = table.columns_[p - 1];
    col.resize(kmax - p + 1);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (int k = p; k <= kmax; ++k) {
      col[k - p] = recursion_entry(gc, prev, k, p);
    }
  }
  return table;
}

CoeffTable build_coeff_table_serial(double theta, int kmax) {
  check_table_args(theta, kmax);
  CoeffTable table(theta, kmax);
  const GammaCache gc(theta, kmax);
  fill_first_column(gc, table.columns_[0], kmax);
  for (int p = 2; p <= kmax; ++p) {
    const auto& prev = table.columns_[p - 2];
    auto& col = table.columns_[p - 1];
    col.resize(kmax - p + 1);
    for (int k = p; k <= kmax; ++k) {
      col[k - p] = recursion_entry(gc, prev, k, p);
    }
  }
  return table;
}

CoeffTable build_limit_table(int kmax) { return build_coeff_table(0.0, kmax); }

LogNum b_term(int k, int l) {
  detail::require(l >= 1 && l <= k - 1, "b_term requires 1 <= l <= k-1");
  return LogNum::from_log(k * kLn2 + std::lgamma(k + 1.0) + std::lgamma(static_cast<double>(k + l)) -
                          l * kLn2 - std::lgamma(l + 1.0) - std::lgamma(2.0 * k + 1.0));
}

double c_constant(int p) {
  detail::require(p >= 1, "c_constant requires p >= 1");
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  double c = sqrt_pi;
  for (int q = 1; q < p; ++q) {
    c *= sqrt_pi * std::pow((q + 2.0) / q, q / 2.0);
  }
  return c;
}

LogNum asymptotic_A(int k, int p) {
  detail::require(p >= 1 && p <= k, "asymptotic_A requires 1 <= p <= k");
  return LogNum::from_log(std::log(c_constant(p)) - 0.5 * p * std::log(static_cast<double>(k)) +
                          k * std::log(p / (p + 1.0)));
}

LogNum c_combined(int k, int l, double lambda, const CoeffTable& limit) {
  detail::require(l >= 1 && l <= k, "c_combined requires 1 <= l <= k");
  detail::require(lambda > l, "c_combined requires lambda > l");
  detail::require(limit.is_limit(), "c_combined needs the theta = 0 limit table");
  detail::require(limit.kmax() >= k, "limit table too small for c_combined");
  const double log_base = std::log((lambda - l) / lambda);
  const double lg_k1 = std::lgamma(k + 1.0);
  LogSumAccumulator acc;
  for (int s = 0; s <= k - l; ++s) {
    const double log_binom = lg_k1 - std::lgamma(s + 1.0) - std::lgamma(k - s + 1.0);
    acc.add(LogNum::from_log(log_binom + s * log_base) * limit.at(k - s, l));
  }
  return acc.result();
}

LogNum c_combined(int k, int l, double lambda) {
  detail::require(k >= 1, "c_combined requires k >= 1");
  return c_combined(k, l, lambda, build_limit_table(k));
}

LogNum asymptotic_C(int k, int l, double lambda) {
  detail::require(l >= 1 && l <= k, "asymptotic_C requires 1 <= l <= k");
  detail::require(lambda > l, "asymptotic_C requires lambda > l");
  const double prefactor = 1.0 + (lambda - l) * (l + 1.0) / (lambda * l);
  const double base = (lambda - l) / lambda + l / (l + 1.0);
  return LogNum::from_log(std::log(c_constant(l)) + 0.5 * l * std::log(prefactor) -
                          0.5 * l * std::log(static_cast<double>(k)) + k * std::log(base));
}

int series_kmax(double x) {
  detail::require(x >= 0.0 && std::isfinite(x), "series_kmax requires finite x >= 0");
  return static_cast<int>(std::ceil(x + 12.0 * std::sqrt(x) + 50.0));
}

void write_table_csv(std::ostream& out, const CoeffTable& table) {
  out << "k,l,A\n";
  for (int k = 1; k <= table.kmax(); ++k) {
    for (int l = 1; l <= k; ++l) {
      out << k << ',' << l << ',' << format_lognum(table.at(k, l)) << '\n';
    }
  }
}

std::string table_to_json(const CoeffTable& table) {
  nlohmann::ordered_json doc;
  doc["theta"] = table.theta();
  doc["kmax"] = table.kmax();
  auto rows = nlohmann::json::array();
  auto log_rows = nlohmann::json::array();
  for (int k = 1; k <= table.kmax(); ++k) {
    auto row = nlohmann::json::array();
    auto log_row = nlohmann::json::array();
    for (int l = 1; l <= k; ++l) {
      const LogNum a = table.at(k, l);
      const double linear = a.value();
      if (linear >= std::numeric_limits<double>::min()) {
        row.push_back(linear);
      } else {
        row.push_back(format_lognum(a));
      }
      log_row.push_back(a.log());
    }
    rows.push_back(std::move(row));
    log_rows.push_back(std::move(log_row));
  }
  doc["A"] = std::move(rows);
  doc["log_A"] = std::move(log_rows);
  return doc.dump();
}

}  // namespace pdov
