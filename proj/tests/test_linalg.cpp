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

#include "fqsim/demos.hpp"
#include "fqsim/errors.hpp"
#include "fqsim/linalg.hpp"

using namespace fqsim;
using linalg::exact_expm;
using linalg::fractional_power;
using linalg::max_abs;
using linalg::spectral_distance;

TEST_CASE("exact_expm on the zero generator is the identity") {
  Matrix h = Matrix::Zero(4, 4);
  CHECK(max_abs(exact_expm(h, 1.7) - Matrix::Identity(4, 4)) <= tol::structural);
}

TEST_CASE("exact_expm of a diagonal phase") {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = M_PI;
  Matrix u = exact_expm(h, 1.0);
  Matrix want(2, 2);
  want << 1, 0, 0, -1;
  CHECK(max_abs(u - want) <= tol::structural);
}

TEST_CASE("exact_expm drives the N=1 parity chain to a +-i swap") {
  Matrix h = demos::parity_chain(1);  // equals Pauli X
  Matrix u = exact_expm(h, M_PI / 2.0);
  CHECK(std::abs(std::abs(u(1, 0)) - 1.0) <= tol::structural);
  CHECK(std::abs(u(0, 0)) <= tol::structural);
}

TEST_CASE("exact_expm rejects non-Hermitian input") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(exact_expm(h, 1.0), ValidationError);
}

TEST_CASE("exact_expm validates unitarity of its output") {
  Rng rng(3);
  Matrix h = linalg::random_hermitian(8, rng);
  Matrix u = exact_expm(h, 0.62);
  CHECK(linalg::is_unitary(u, tol::structural));
}

TEST_CASE("exact_expm group law") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix h = linalg::random_hermitian(6, rng);
    double t1 = rng.next_double() * 2.0 - 1.0;
    double t2 = rng.next_double() * 2.0 - 1.0;
    Matrix lhs = exact_expm(h, t1) * exact_expm(h, t2);
    CHECK(max_abs(lhs - exact_expm(h, t1 + t2)) <= tol::compositional);
  }
}

TEST_CASE("spectral_distance basics") {
  Rng rng(5);
  Matrix u = linalg::random_unitary(4, rng);
  CHECK(spectral_distance(u, u) == doctest::Approx(0.0).epsilon(1e-14));
  Matrix id = Matrix::Identity(2, 2);
  CHECK(spectral_distance(id, -id) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(spectral_distance(id, Matrix::Identity(4, 4)), ValidationError);
}

TEST_CASE("spectral_distance triangle inequality on random unitary triples") {
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix a = linalg::random_unitary(5, rng);
    Matrix b = linalg::random_unitary(5, rng);
    Matrix c = linalg::random_unitary(5, rng);
    CHECK(spectral_distance(a, c) <= spectral_distance(a, b) + spectral_distance(b, c) + 1e-12);
  }
}

TEST_CASE("spectral_norm_apply agrees with the dense norm") {
  Rng rng(23);
  Matrix a = linalg::random_unitary(32, rng);
  Matrix b = linalg::random_unitary(32, rng);
  Matrix d = a - b;
  double dense = spectral_distance(a, b);
  double via_apply = linalg::spectral_norm_apply(
      32, [&](const Vector& v) { return Vector(d * v); },
      [&](const Vector& v) { return Vector(d.adjoint() * v); });
  // Power iteration resolves clustered singular values to ~1e-5 relative.
  CHECK(via_apply == doctest::Approx(dense).epsilon(1e-4));
}

TEST_CASE("fractional_power endpoints and the half query") {
  Rng rng(7);
  Matrix q = linalg::random_involution(4, rng);
  CHECK(max_abs(fractional_power(q, 0.0) - Matrix::Identity(4, 4)) <= tol::structural);
  CHECK(max_abs(fractional_power(q, 1.0) - q) <= tol::structural);

  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  Matrix want(2, 2);
  want << Complex(1, 0), 0, 0, Complex(0, -1);
  CHECK(max_abs(fractional_power(z, 0.5) - want) <= tol::structural);

  Matrix not_inv = Matrix::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(fractional_power(not_inv, 0.5), ValidationError);
}

TEST_CASE("fractional powers compose on the eigenprojector phase algebra") {
  Rng rng(9);
  for (int trial = 0; trial < 6; ++trial) {
    Matrix q = linalg::random_involution(4, rng);
    double a = 0.4 * rng.next_double();
    double b = 0.4 * rng.next_double();
    Matrix lhs = fractional_power(q, a) * fractional_power(q, b);
    CHECK(max_abs(lhs - fractional_power(q, a + b)) <= tol::structural);
  }
}

TEST_CASE("fractional_power closed form e^{-i pi a/2}(c I + i s Q)") {
  Rng rng(13);
  Matrix q = linalg::random_involution(6, rng);
  double a = 0.73;
  Matrix expected = std::polar(1.0, -M_PI * a / 2.0) *
                    (std::cos(M_PI * a / 2.0) * Matrix::Identity(6, 6) +
                     Complex(0, 1) * std::sin(M_PI * a / 2.0) * q);
  CHECK(max_abs(fractional_power(q, a) - expected) <= tol::structural);
}
