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

#ifndef PDOV_TILTED_HPP
#define PDOV_TILTED_HPP

#include <span>

#include "pdov/coefficients.hpp"
#include "pdov/configuration.hpp"
#include "pdov/lognum.hpp"
#include "pdov/selection.hpp"

namespace pdov {

/// Default relative truncation tolerance of the exponential series.
inline constexpr double kSeriesTolerance = 1e-13;

/// Partial sum of sum_{k >= start} a_k x^k / k! with a certified bound on the omitted terms.
struct SeriesSum {
  LogNum value;
  LogNum truncation_bound;
  int terms_used = 0;
};

/// Sums a_k x^k / k! over the supplied coefficients (coeffs[i] = a_{start+i}),
/// stopping early once k > x and the bound on everything not yet added falls
/// below early_stop_tol times the partial sum. The bound uses suffix maxima of
/// the remaining coefficients and `tail_cap`, which must dominate every a_k
/// past the end of the span (zero means the series ends there).
SeriesSum exp_series_sum(double x, std::span<const LogNum> coeffs, int start, LogNum tail_cap,
                         double early_stop_tol = kSeriesTolerance);

/// Certified series value: throws PrecisionError when the truncation bound
/// exceeds rel_tol times the sum. Overflow-free for x up to at least 1e4.
LogNum exp_series(double x, std::span<const LogNum> coeffs, int start, double rel_tol = kSeriesTolerance,
                  LogNum tail_cap = LogNum::zero());

/// Dominating bound for column l entries beyond the end of the table: the
/// last entry once the column is past its mode, otherwise 2^{2-l}.
LogNum column_tail_cap(const CoeffTable& table, int l);

/// K_n^lambda(theta): the ratio of sum_{l<=[lambda]} theta^l sum_{k>=l} x^k/k! A_{k+n,l}(theta)
/// to the same sum with A_{k,l}(theta). With use_limit_coeffs the limit
/// coefficients A_{k,l} are used instead (the K-tilde variant).
/// Requires lambda >= 1 and theta < 1.
double k_ratio(const SelectionSpec& spec, int n, bool use_limit_coeffs = false);

struct ProofDiagnostics {
  double k;        ///< K_n
  double k_tilde;  ///< K_n with limit coefficients
  double f;        ///< F_n: numerator gap between the two coefficient sets, over the limit denominator
  double g;        ///< G: denominator gap, over the limit denominator
};

/// K_n = (K~_n + F_n) / (1 + G).
ProofDiagnostics proof_diagnostics(const SelectionSpec& spec, int n);

struct TailBound {
  double computed_tail;
  double analytic_bound;
};

/// Columns past [lambda]: sum_{l>[lambda]} theta^l sum_{k>=l} x^k/k! A_{k,l}(theta)
/// against 4 theta^{[lambda]-lambda+1} / 2^{[lambda]+1} * 2/(2-theta).
TailBound tail_bound(const SelectionSpec& spec);

enum class MgfRoute {
  kAuto,          ///< shifted series when t <= x, outer alternating series otherwise
  kShifted,       ///< e^t E e^{(x-t)(1-H2)} / E e^{x(1-H2)}, all terms positive; needs t <= x
  kOuterSeries,   ///< e^t (1 + sum_n (-t)^n/n! R_n), R_n the tilted moment ratios
};

/// Moment generating function of H2 under pi_{lambda,theta}. |t| <= 50.
/// kmax = 0 applies the series sizing rule.
double mgf(const SelectionSpec& spec, double t, int kmax = 0, MgfRoute route = MgfRoute::kAuto);

/// E_pi[1 - H2] = sum_m x^m/m! m_{m+1} / sum_m x^m/m! m_m.
double tilted_mean_heterozygosity(const SelectionSpec& spec);

struct PhaseResult {
  double lambda;
  int u;
  double limit_homozygosity;
  Configuration limit_configuration;
};

/// The unique u with u(u-1) < lambda <= u(u+1). Critical values belong to the lower phase.
PhaseResult classify_phase(double lambda);

/// e^{t/u} with u = classify_phase(lambda).u.
double limit_mgf(double lambda, double t);

}  // namespace pdov

#endif  // PDOV_TILTED_HPP
