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

#include "pdov/format.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace pdov {

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  return fmt::format("{:.17g}", value);
}

std::string format_lognum(LogNum value) {
  if (value.is_zero()) {
    return "0";
  }
  const double linear = value.value();
  if (std::isfinite(linear) && linear >= std::numeric_limits<double>::min()) {
    return format_number(linear);
  }
  const double log10_value = value.log() / std::numbers::ln10;
  double exponent = std::floor(log10_value);
  double mantissa = std::pow(10.0, log10_value - exponent);
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  return fmt::format("{:.16f}e{:+d}", mantissa, static_cast<long long>(exponent));
}

}  // namespace pdov
