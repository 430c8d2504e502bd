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

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "fqsim/rng.hpp"
#include "fqsim/tolerances.hpp"

namespace fqsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace linalg {

// Largest |entry| (the max norm of the paper's cost bookkeeping).
double max_abs(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = tol::structural);
bool is_unitary(const Matrix& a, double tol = tol::structural);
// Checks ||Q^2 - I||_max, i.e. that the spectrum lies in {+1, -1}.
bool is_involution(const Matrix& q, double tol = tol::structural);

// e^{-iHt} of a Hermitian H via eigendecomposition.  Exact unitarity matters
// more than speed here: this is the reference oracle everything else is
// measured against.  Throws ValidationError on non-Hermitian input.
Matrix exact_expm(const Matrix& h, double t);

// Spectral norm ||U - V|| (largest singular value of the difference).
// Throws ValidationError on dimension mismatch.
double spectral_distance(const Matrix& u, const Matrix& v);

// Largest singular value of an operator given only as apply callbacks, by
// power iteration on A^dag A.  Used where dense materialization is too big.
double spectral_norm_apply(int dim, const std::function<Vector(const Vector&)>& apply,
                           const std::function<Vector(const Vector&)>& apply_adjoint,
                           int iterations = 400);

// Q^alpha = (I+Q)/2 + e^{-i pi alpha} (I-Q)/2 for Q with eigenvalues +-1.
// Equals e^{-i pi alpha/2} (cos(pi alpha/2) I + i sin(pi alpha/2) Q).
Matrix fractional_power(const Matrix& q, double alpha);

Matrix kron(const Matrix& a, const Matrix& b);

// Haar-random unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(int dim, Rng& rng);
// Random Hermitian unitary (eigenvalues +-1), i.e. Q with Q^2 = I.
Matrix random_involution(int dim, Rng& rng);
Matrix random_hermitian(int dim, Rng& rng);
Vector random_state(int dim, Rng& rng);

}  // namespace linalg
}  // namespace fqsim
