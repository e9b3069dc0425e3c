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

#ifndef PDOV_ERRORS_HPP
#define PDOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdov {

/// Raised when an argument lies outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a series or table cannot deliver the requested accuracy
/// (insufficient kmax, non-convergent alternating sum). Never silently truncated.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw DomainError(message);
  }
}

}  // namespace detail

}  // namespace pdov

#endif  // PDOV_ERRORS_HPP
