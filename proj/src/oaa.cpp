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

#include "fqsim/oaa.hpp"

#include <cmath>

#include "fqsim/errors.hpp"

namespace fqsim::oaa {

double OAAConfig::predicted_amplitude() const {
  return std::sin((2.0 * iterations + 1.0) * theta);
}

Matrix reflect_zero(std::int64_t label_dim, std::int64_t total_dim) {
  if (label_dim < 1 || total_dim % label_dim != 0) {
    throw ValidationError("reflect_zero: label dimension must divide the total");
  }
  const std::int64_t sys = total_dim / label_dim;
  Matrix r = -Matrix::Identity(total_dim, total_dim);
  r.topLeftCorner(sys, sys) = Matrix::Identity(sys, sys);
  return r;
}

Matrix oaa_step(const Matrix& u, std::int64_t label_dim) {
  if (!linalg::is_unitary(u, tol::compositional)) {
    throw ValidationError("oaa_step: U must be unitary");
  }
  const Matrix r = reflect_zero(label_dim, u.rows());
  return -(u * r * u.adjoint() * r);
}

SubspaceCheck verify_subspace(const Matrix& u, std::int64_t label_dim) {
  const std::int64_t sys = u.rows() / label_dim;
  // Pi U (|0> (x) I) keeps the first sys columns and the first sys rows.
  const Matrix block = u.topLeftCorner(sys, sys);
  const Matrix q = block.adjoint() * block;
  SubspaceCheck out;
  out.p = q.diagonal().real().mean();
  out.deviation = linalg::spectral_distance(q, out.p * Matrix::Identity(sys, sys));
  return out;
}

Matrix amplify(const Matrix& u, int iterations, std::int64_t label_dim, bool check) {
  if (iterations < 0) throw ValidationError("amplify: iteration count must be >= 0");
  if (check) {
    const SubspaceCheck sc = verify_subspace(u, label_dim);
    if (sc.deviation > tol::compositional) {
      throw ValidationError("amplify: oblivious-amplification promise violated");
    }
    const double theta = std::asin(std::sqrt(std::min(1.0, std::max(0.0, sc.p))));
    if (std::abs(std::sin(theta) * std::sin(theta) - sc.p) > 1e-8) {
      throw InvariantError("amplify: inferred angle inconsistent with measured p");
    }
  }
  if (iterations == 0) return u;
  const Matrix s = oaa_step(u, label_dim);
  Matrix out = u;
  for (int i = 0; i < iterations; ++i) out = s * out;
  return out;
}

Matrix zero_label_block(const Matrix& a, std::int64_t label_dim) {
  const std::int64_t sys = a.rows() / label_dim;
  return a.topLeftCorner(sys, sys);
}

}  // namespace fqsim::oaa
