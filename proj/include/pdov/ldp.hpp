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

#ifndef PDOV_LDP_HPP
#define PDOV_LDP_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <vector>

#include "pdov/configuration.hpp"

namespace pdov {

using Rational = boost::rational<std::int64_t>;

/// Homozygosity phi2(x) = sum x_i^2.
double phi2(const Configuration& x);

/// Rate function of PD(theta) at speed log(1/theta): 0 on L_1, n-1 on L_n,
/// +infinity off the union of the L_n (mass below 1).
double j_rate(const Configuration& x);

struct InfTerm {
  double value;
  std::vector<int> argmin;  ///< all minimizing n, ascending
};

/// inf { lambda/n + n - 1 : n >= 1 }. The objective is convex in n with its
/// continuous minimum at sqrt(lambda), so n in 1..ceil(sqrt(lambda))+2 is searched.
/// Values within 1e-12 (relative) of the minimum count as ties.
InfTerm inf_term(double lambda);

/// Exact inf term for rational lambda.
Rational inf_term_exact(Rational lambda);

/// S_lambda(x) = J(x) + lambda phi2(x) - inf_term(lambda).
double s_rate(const Configuration& x, double lambda);

/// S_lambda at the uniform configuration c_k, in exact rational arithmetic.
Rational s_rate_uniform_exact(int k, Rational lambda);

/// d(x, y) = sum_i |x_i - y_i| / 2^i (i from 1), shorter input padded with zeros.
double metric_d(const Configuration& x, const Configuration& y);

/// Rate of the mean of geometric(alpha) counts on {0, 1, ...}:
/// x log x - (x+1) log(1+x) - [x log(1-alpha) + log alpha], with 0 log 0 = 0.
double rate_I1(double x, double alpha);

/// Rate of the mean of Bernoulli(alpha) variables:
/// x log(x/alpha) + (1-x) log((1-x)/(1-alpha)), with 0 log 0 = 0.
double rate_I2(double x, double alpha);

/// c_k = (1/k, ..., 1/k) with k entries.
Configuration uniform_config(int k);

}  // namespace pdov

#endif  // PDOV_LDP_HPP
