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

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "pdov/coefficients.hpp"
#include "pdov/errors.hpp"
#include "pdov/parallel.hpp"
#include "pdov/verify.hpp"

namespace pdov {
namespace {

using boost::multiprecision::cpp_rational;

// Exact A_{k,p}(theta) for rational theta, straight from the triangular recursion.
std::vector<std::vector<cpp_rational>> exact_table(cpp_rational theta, int kmax) {
  std::vector<std::vector<cpp_rational>> a(kmax + 1, std::vector<cpp_rational>(kmax + 1, 0));
  auto weight = [&](int k, int l) {
    // (2k+theta)/(2k) 2^k k! / (2^l l!) / prod_{j=k+l}^{2k} (j + theta)
    cpp_rational w = (2 * k + theta) / (2 * k);
    for (int j = l + 1; j <= k; ++j) {
      w *= 2 * j;
    }
    for (int j = k + l; j <= 2 * k; ++j) {
      w /= (j + theta);
    }
    return w;
  };
  for (int k = 1; k <= kmax; ++k) {
    a[k][1] = weight(k, 0);
    for (int p = 2; p <= k; ++p) {
      for (int l = p - 1; l <= k - 1; ++l) {
        a[k][p] += weight(k, l) * a[l][p - 1];
      }
    }
  }
  return a;
}

double closed_form_first_column(int k, double theta) {
  double v = std::exp2(k - 1) * std::tgamma(k);
  for (int j = k; j <= 2 * k - 1; ++j) {
    v /= (j + theta);
  }
  return v;
}

TEST(CoeffTable, SpecExamples) {
  EXPECT_NEAR(build_coeff_table(1.0, 1).at(1, 1).value(), 0.5, 1e-15);
  EXPECT_NEAR(build_coeff_table(0.5, 2).at(2, 1).value(), 2.0 / (3.5 * 2.5), 1e-14);
  const CoeffTable lim = build_limit_table(2);
  EXPECT_NEAR(lim.at(1, 1).value(), 1.0, 1e-15);
  EXPECT_NEAR(lim.at(2, 1).value(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(lim.at(2, 2).value(), 1.0 / 3.0, 1e-15);
  EXPECT_TRUE(lim.is_limit());
}

TEST(CoeffTable, ThetaZeroCoincidesWithLimitTable) {
  const CoeffTable a = build_coeff_table(0.0, 40);
  const CoeffTable b = build_limit_table(40);
  for (int k = 1; k <= 40; ++k) {
    for (int l = 1; l <= k; ++l) {
      EXPECT_EQ(a.at(k, l), b.at(k, l));
    }
  }
}

TEST(CoeffTable, FirstColumnMatchesClosedFormProduct) {
  for (double theta : {0.0, 0.1, 0.5, 1.0}) {
    const CoeffTable t = build_coeff_table(theta, 60);
    for (int k = 1; k <= 60; ++k) {
      EXPECT_NEAR(t.at(k, 1).value() / closed_form_first_column(k, theta), 1.0, 1e-12) << theta << " " << k;
    }
  }
}

TEST(CoeffTable, MatchesExactRationalRecursion) {
  constexpr int kmax = 24;
  for (auto [num, den] : {std::pair{1, 2}, std::pair{1, 1}, std::pair{0, 1}, std::pair{1, 10}}) {
    const cpp_rational theta(num, den);
    const auto exact = exact_table(theta, kmax);
    const CoeffTable t = build_coeff_table(static_cast<double>(num) / den, kmax);
    for (int k = 1; k <= kmax; ++k) {
      for (int p = 1; p <= k; ++p) {
        const double e = static_cast<double>(exact[k][p]);
        EXPECT_NEAR(t.at(k, p).value() / e, 1.0, 1e-12) << num << "/" << den << " k=" << k << " p=" << p;
      }
    }
  }
}

TEST(CoeffTable, EntriesArePositiveAndFinite) {
  const CoeffTable t = build_coeff_table(1e-6, 300);
  for (int k = 1; k <= 300; ++k) {
    for (int l = 1; l <= k; ++l) {
      EXPECT_TRUE(std::isfinite(t.at(k, l).log()));
    }
  }
}

TEST(CoeffTable, ColumnsAreUnimodal) {
  for (double theta : {0.0, 1e-6, 0.5, 1.0}) {
    const CoeffTable t = build_coeff_table(theta, 400);
    for (int l = 1; l <= 400; ++l) {
      const auto col = t.column(l);
      bool falling = false;
      for (std::size_t i = 1; i < col.size(); ++i) {
        if (col[i] < col[i - 1]) {
          falling = true;
        } else {
          ASSERT_FALSE(falling) << "column " << l << " rises again at k=" << l + i << " theta=" << theta;
        }
      }
    }
  }
}

TEST(CoeffTable, ParallelBuildIsBitIdenticalToSerial) {
  for (double theta : {0.0, 0.3, 1.0}) {
    const CoeffTable serial = build_coeff_table_serial(theta, 250);
    for (int threads : {1, 2, 4}) {
      set_thread_cap(threads);
      const CoeffTable par = build_coeff_table(theta, 250);
      for (int k = 1; k <= 250; ++k) {
        for (int l = 1; l <= k; ++l) {
          ASSERT_EQ(par.at(k, l), serial.at(k, l));
        }
      }
    }
    set_thread_cap(0);
  }
}

TEST(CoeffTable, RejectsBadArguments) {
  EXPECT_THROW(build_coeff_table(0.5, 0), DomainError);
  EXPECT_THROW(build_coeff_table(-0.1, 5), DomainError);
  EXPECT_THROW(build_coeff_table(1.5, 5), DomainError);
  EXPECT_THROW(build_limit_table(0), DomainError);
  const CoeffTable t = build_limit_table(5);
  EXPECT_THROW((void)t.at(3, 4), DomainError);
  EXPECT_THROW((void)t.at(6, 1), DomainError);
}

TEST(CoeffTable, UpperBoundAndPairedInequalities) {
  for (const auto& r : run_suite("ubmh")) {
    EXPECT_TRUE(r.passed()) << r.check << " margin " << r.worst_margin;
  }
}

TEST(BTerm, Examples) {
  EXPECT_NEAR(b_term(5, 3).value(), 1.0 / 9.0, 1e-14);
  EXPECT_NEAR(b_term(5, 4).value(), 1.0 / 9.0, 1e-14);
  EXPECT_NEAR(b_term(3, 1).value(), 0.2, 1e-14);
  EXPECT_THROW(b_term(3, 3), DomainError);
  EXPECT_THROW(b_term(3, 0), DomainError);
}

TEST(BTerm, ConsecutiveRatioIsExact) {
  for (int k = 3; k <= 120; ++k) {
    for (int l = 1; l + 1 <= k - 1; ++l) {
      const double r = (b_term(k, l + 1) / b_term(k, l)).value();
      EXPECT_NEAR(r, (k + l) / (2.0 * (l + 1)), 1e-11 * r);
      if (l < k - 2) {
        EXPECT_GT(r, 1.0);
      }
    }
  }
}

TEST(Constants, CRecursion) {
  EXPECT_NEAR(c_constant(1), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(c_constant(2), std::numbers::pi * std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(c_constant(3), 2.0 * std::pow(std::numbers::pi, 1.5) * std::sqrt(3.0), 1e-12);
  EXPECT_THROW(c_constant(0), DomainError);
}

TEST(Asymptotics, FormulaEvaluation) {
  const double expected = std::log(std::sqrt(std::numbers::pi)) - 0.5 * std::log(100.0) - 100.0 * std::log(2.0);
  EXPECT_NEAR(asymptotic_A(100, 1).log(), expected, 1e-12);
  EXPECT_NEAR(asymptotic_A(1, 1).value(), std::sqrt(std::numbers::pi) / 2.0, 1e-14);
  const double ratio = (build_limit_table(400).at(400, 1) / asymptotic_A(400, 1)).value();
  EXPECT_GE(ratio, 0.9);
  EXPECT_LE(ratio, 1.1);
  EXPECT_THROW(asymptotic_A(3, 4), DomainError);
}

TEST(Asymptotics, CombinedCoefficients) {
  EXPECT_NEAR(c_combined(2, 1, 6.0).value(), 2.0, 1e-13);
  const CoeffTable lim = build_limit_table(10);
  for (int l = 1; l <= 5; ++l) {
    EXPECT_EQ(c_combined(l, l, 6.0, lim), lim.at(l, l));
  }
  const double k = 50.0;
  const double expected = std::log(std::sqrt(std::numbers::pi)) + 0.5 * std::log(1.0 + 10.0 / 6.0) -
                          0.5 * std::log(k) + k * std::log(5.0 / 6.0 + 0.5);
  EXPECT_NEAR(asymptotic_C(50, 1, 6.0).log(), expected, 1e-12);
  const double err400 = std::abs(std::expm1(c_combined(400, 1, 6.0).log() - asymptotic_C(400, 1, 6.0).log()));
  EXPECT_LT(err400, 0.1);
  EXPECT_NO_THROW(asymptotic_C(2, 2, 6.0));
  EXPECT_THROW(c_combined(5, 2, 2.0), DomainError);
  EXPECT_THROW(asymptotic_C(5, 2, 1.5), DomainError);
}

TEST(Asymptotics, GrowthBasesTieAtCriticalLambda) {
  auto base = [](int l, double lambda) { return (lambda - l) / lambda + l / (l + 1.0); };
  EXPECT_NEAR(base(1, 6.0), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(base(2, 6.0), 4.0 / 3.0, 1e-15);
  const double g1 = asymptotic_C(300, 1, 6.0).log() - asymptotic_C(299, 1, 6.0).log();
  const double g2 = asymptotic_C(300, 2, 6.0).log() - asymptotic_C(299, 2, 6.0).log();
  EXPECT_NEAR(g1, g2, 1e-2);
}

TEST(Asymptotics, ProxySuitesPass) {
  for (const std::string suite : {"coef1", "coef2"}) {
    for (const auto& r : run_suite(suite)) {
      EXPECT_TRUE(r.passed()) << r.check << " margin " << r.worst_margin;
    }
  }
}

TEST(SeriesKmax, SizingRule) {
  EXPECT_EQ(series_kmax(0.0), 50);
  EXPECT_EQ(series_kmax(100.0), static_cast<int>(std::ceil(100.0 + 120.0 + 50.0)));
  EXPECT_THROW(series_kmax(-1.0), DomainError);
}

TEST(Export, CsvAndJsonShapes) {
  const CoeffTable t = build_coeff_table(0.5, 3);
  std::ostringstream csv;
  write_table_csv(csv, t);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "k,l,A");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
  }
  EXPECT_EQ(rows, 6);

  const auto j = nlohmann::json::parse(table_to_json(t));
  EXPECT_EQ(j["kmax"], 3);
  ASSERT_EQ(j["A"].size(), 3u);
  EXPECT_EQ(j["A"][2].size(), 3u);
  EXPECT_NEAR(j["A"][1][0].get<double>(), 2.0 / (3.5 * 2.5), 1e-15);

  const auto big = nlohmann::json::parse(table_to_json(build_limit_table(400)));
  EXPECT_TRUE(big["A"][399][399].is_string());
}

}  // namespace
}  // namespace pdov
