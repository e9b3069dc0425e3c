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

#ifndef PDOV_COEFFICIENTS_HPP
#define PDOV_COEFFICIENTS_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pdov/lognum.hpp"

namespace pdov {

/// Triangular table of the heterozygosity-moment coefficients A_{k,l}(theta),
/// 1 <= l <= k <= kmax, stored in log space.
///
/// With theta > 0 the table satisfies m_k = sum_l A_{k,l}(theta) theta^l.
/// theta == 0 marks the limit table A_{k,l} = A_{k,l}(0), which no longer
/// depends on the mutation rate and dominates the finite-theta entries.
/// Tables are immutable after construction.
class CoeffTable {
 public:
  [[nodiscard]] double theta() const { return theta_; }
  [[nodiscard]] int kmax() const { return kmax_; }
  [[nodiscard]] bool is_limit() const { return theta_ == 0.0; }

  /// A_{k,l}; throws DomainError outside 1 <= l <= k <= kmax.
  [[nodiscard]] LogNum at(int k, int l) const;

  /// Column l, entries for k = l..kmax (index 0 is A_{l,l}).
  [[nodiscard]] std::span<const LogNum> column(int l) const;

 private:
  friend CoeffTable build_coeff_table(double theta, int kmax);
  friend CoeffTable build_coeff_table_serial(double theta, int kmax);

  CoeffTable(double theta, int kmax);

  double theta_;
  int kmax_;
  std::vector<std::vector<LogNum>> columns_;
};

/// Builds A_{k,l}(theta) by the column recursion in l. Columns are filled
/// with an OpenMP loop over k; every entry is produced by the same arithmetic
/// as the serial reference, so the two tables are bit-identical.
CoeffTable build_coeff_table(double theta, int kmax);

/// Serial reference implementation of build_coeff_table.
CoeffTable build_coeff_table_serial(double theta, int kmax);

/// The theta -> 0 limit table A_{k,l}.
CoeffTable build_limit_table(int kmax);

/// B_{k,l} = 2^k k! Gamma(k+l) / (2^l l! Gamma(2k+1)), 1 <= l <= k-1.
LogNum b_term(int k, int l);

/// C_1 = sqrt(pi), C_{p+1} = C_p sqrt(pi) ((p+2)/p)^{p/2}.
double c_constant(int p);

/// Large-k approximation C_p k^{-p/2} (p/(p+1))^k of A_{k,p}.
/// Evaluated verbatim for any k; only meaningful for large k.
LogNum asymptotic_A(int k, int p);

/// C_{k,l} = sum_{s=0}^{k-l} binom(k,s) ((lambda-l)/lambda)^s A_{k-s,l}, the
/// coefficient of the theta^{-(lambda-l)}-rescaled series. `limit` must be a
/// limit table with kmax >= k.
LogNum c_combined(int k, int l, double lambda, const CoeffTable& limit);

/// Convenience overload that builds the limit table it needs.
LogNum c_combined(int k, int l, double lambda);

/// Large-k approximation of C_{k,l}:
/// C_l (1 + (lambda-l)(l+1)/(lambda l))^{l/2} k^{-l/2} ((lambda-l)/lambda + l/(l+1))^k.
LogNum asymptotic_C(int k, int l, double lambda);

/// kmax sizing rule for series consumers: ceil(x + 12 sqrt(x) + 50).
int series_kmax(double x);

/// CSV export with header `k,l,A`.
void write_table_csv(std::ostream& out, const CoeffTable& table);

/// JSON export: {"theta", "kmax", "A": [[A11], [A21, A22], ...], "log_A": [...]}.
/// Entries of "A" that underflow a double are emitted as scientific strings.
std::string table_to_json(const CoeffTable& table);

}  // namespace pdov

#endif  // PDOV_COEFFICIENTS_HPP
