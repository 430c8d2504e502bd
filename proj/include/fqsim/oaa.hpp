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

#pragma once

#include "fqsim/linalg.hpp"

namespace fqsim::oaa {

struct OAAConfig {
  std::int64_t label_dim = 1;  // 2^{m-bar}
  double theta = 0.0;          // sin(theta) = success amplitude
  int iterations = 0;
  double predicted_amplitude() const;  // sin((2l+1) theta)
};

// R = 2 Pi - I with Pi = |0^{m-bar}><0^{m-bar}| (x) I.
Matrix reflect_zero(std::int64_t label_dim, std::int64_t total_dim);

// S = -U R U^dag R.
Matrix oaa_step(const Matrix& u, std::int64_t label_dim);

struct SubspaceCheck {
  double p = 0.0;          // mean diagonal of Q = (<0| (x) I) U^dag Pi U (|0> (x) I)
  double deviation = 0.0;  // ||Q - p I||
};

// The 2D-subspace operator check; the promise holds iff deviation <= 1e-10.
SubspaceCheck verify_subspace(const Matrix& u, std::int64_t label_dim);

// S^l U.  With `check` set, the promise is verified first and theta inferred
// from the measured p must match sin^2(theta) to 1e-8.
Matrix amplify(const Matrix& u, int iterations, std::int64_t label_dim, bool check = true);

// Zero-label block (<0| (x) I) A (|0> (x) I).
Matrix zero_label_block(const Matrix& a, std::int64_t label_dim);

}  // namespace fqsim::oaa
