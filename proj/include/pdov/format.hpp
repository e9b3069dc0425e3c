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

#ifndef PDOV_FORMAT_HPP
#define PDOV_FORMAT_HPP

#include <string>

#include "pdov/lognum.hpp"

namespace pdov {

/// Shortest-safe text for a double: 17 significant digits, "inf"/"-inf"/"nan" for
/// non-finite values.
std::string format_number(double value);

/// Linear-scale text when the value is a normal double, otherwise scientific
/// notation reconstructed from the logarithm (e.g. "3.1415926535897931e-500").
std::string format_lognum(LogNum value);

}  // namespace pdov

#endif  // PDOV_FORMAT_HPP
