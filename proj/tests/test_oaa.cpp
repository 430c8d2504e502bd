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

#include "doctest.h"

#include <cmath>

#include "fqsim/errors.hpp"
#include "fqsim/fracquery.hpp"
#include "fqsim/oaa.hpp"

using namespace fqsim;
using namespace fqsim::oaa;

namespace {

// Promise-satisfying unitary: U |0>|psi> = sin(theta)|0>V|psi> + cos(theta)|1>W|psi>.
Matrix promise_unitary(double theta, const Matrix& v, const Matrix& w) {
  const std::int64_t n = v.rows();
  Matrix rot = Matrix::Zero(2 * n, 2 * n);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  rot.topLeftCorner(n, n) = s * Matrix::Identity(n, n);
  rot.topRightCorner(n, n) = c * Matrix::Identity(n, n);
  rot.bottomLeftCorner(n, n) = c * Matrix::Identity(n, n);
  rot.bottomRightCorner(n, n) = -s * Matrix::Identity(n, n);
  Matrix select = Matrix::Zero(2 * n, 2 * n);
  select.topLeftCorner(n, n) = v;
  select.bottomRightCorner(n, n) = w;
  return select * rot;
}

fq::SegmentSpec small_segment(Rng& rng) {
  fq::FractionalQueryProgram prog;
  prog.system_dim = 2;
  prog.oracles.push_back(linalg::random_involution(2, rng));
  prog.steps = {{0, 0.09}, {0, 0.06}};
  prog.drives = {linalg::random_unitary(2, rng), linalg::random_unitary(2, rng),
                 linalg::random_unitary(2, rng)};
  return fq::build_segment(prog);
}

}  // namespace

TEST_CASE("reflect_zero basics") {
  CHECK(linalg::max_abs(reflect_zero(1, 4) - Matrix::Identity(4, 4)) == 0.0);
  Matrix r = reflect_zero(2, 2);
  Matrix want(2, 2);
  want << 1, 0, 0, -1;
  CHECK(linalg::max_abs(r - want) == 0.0);
  Matrix r2 = reflect_zero(4, 8);
  CHECK(linalg::max_abs(Matrix(r2 * r2) - Matrix::Identity(8, 8)) <= 1e-14);
}

TEST_CASE("oaa_step rotates by 2 theta and one step recovers the segment") {
  Rng rng(21);
  // Segment case: sin^2(theta) = 1/4, one S application gives amplitude 1.
  fq::SegmentSpec spec = small_segment(rng);
  Matrix u = fq::segment_operator_dense(spec);
  const std::int64_t label = u.rows() / 2;
  const Matrix v = std::polar(1.0, spec.theta) * fq::program_product(spec.chunk);

  Matrix s = oaa_step(u, label);
  Matrix su = s * u;
  CHECK(linalg::max_abs(Matrix(su.topLeftCorner(2, 2)) - v) <= tol::compositional);
  CHECK_THROWS_AS(oaa_step(0.5 * u, label), ValidationError);
}

TEST_CASE("sin((2l+1) theta) amplitude law at three angles") {
  Rng rng(22);
  const Matrix v = linalg::random_unitary(3, rng);
  const Matrix w = linalg::random_unitary(3, rng);
  for (double theta : {M_PI / 6.0, M_PI / 10.0, 0.3}) {
    const Matrix u = promise_unitary(theta, v, w);
    for (int l = 0; l <= 4; ++l) {
      const Matrix a = amplify(u, l, 2);
      const double want = std::sin((2.0 * l + 1.0) * theta);
      CHECK(linalg::max_abs(Matrix(a.topLeftCorner(3, 3)) - want * v) <= tol::compositional);
    }
  }
}

TEST_CASE("amplify with l = 0 returns U and the signed prediction holds at l = 3") {
  Rng rng(23);
  const Matrix v = linalg::random_unitary(2, rng);
  const Matrix w = linalg::random_unitary(2, rng);
  const double theta = M_PI / 6.0;
  const Matrix u = promise_unitary(theta, v, w);
  CHECK(linalg::max_abs(amplify(u, 0, 2) - u) == 0.0);
  // sin(7 pi/6) = -1/2.
  const Matrix a3 = amplify(u, 3, 2);
  CHECK(linalg::max_abs(Matrix(a3.topLeftCorner(2, 2)) + 0.5 * v) <= tol::compositional);
}

TEST_CASE("verify_subspace: segment p = 1/4, identity p = 1, random negative control") {
  Rng rng(24);
  fq::SegmentSpec spec = small_segment(rng);
  Matrix u = fq::segment_operator_dense(spec);
  SubspaceCheck sc = verify_subspace(u, u.rows() / 2);
  CHECK(sc.p == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sc.deviation <= tol::structural);

  SubspaceCheck id = verify_subspace(Matrix::Identity(4, 4), 2);
  CHECK(id.p == doctest::Approx(1.0));
  CHECK(id.deviation <= 1e-14);

  Matrix generic = linalg::random_unitary(8, rng);
  SubspaceCheck bad = verify_subspace(generic, 2);
  CHECK(bad.deviation > 1e-6);
  CHECK_THROWS_AS(amplify(generic, 1, 2), ValidationError);
}

TEST_CASE("the orthogonal-state construction of the 2D subspace lemma") {
  Rng rng(25);
  const Matrix v = linalg::random_unitary(4, rng);
  const Matrix w = linalg::random_unitary(4, rng);
  const double theta = 0.4;
  const double p = std::sin(theta) * std::sin(theta);
  const Matrix u = promise_unitary(theta, v, w);
  for (int trial = 0; trial < 20; ++trial) {
    Vector psi = linalg::random_state(4, rng);
    Vector zero_psi = Vector::Zero(8);
    zero_psi.head(4) = psi;
    Vector u_psi = u * zero_psi;
    Vector phi = Vector::Zero(8);
    phi.head(4) = v * psi;
    Vector phi_perp = (u_psi - std::sqrt(p) * phi) / std::sqrt(1.0 - p);
    // |Psi_perp> = U^dag (sqrt(1-p)|0>V|psi> - sqrt(p)|Phi_perp>) has no
    // zero-label component.
    Vector psi_perp = u.adjoint() * (std::sqrt(1.0 - p) * phi - std::sqrt(p) * phi_perp);
    CHECK(psi_perp.head(4).norm() <= tol::compositional);
    CHECK(std::abs(psi_perp.dot(zero_psi)) <= tol::compositional);
  }
}
