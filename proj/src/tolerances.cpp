// Copyright 2026 The fqsim Authors
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

#include "fqsim/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace fqsim::tol {

std::size_t dense_limit() {
  static const std::size_t limit = [] {
    const char* env = std::getenv("FQSIM_DENSE_LIMIT");
    if (env == nullptr) return kDenseLimit;
    try {
      const long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
    return kDenseLimit;
  }();
  return limit;
}

}  // namespace fqsim::tol
