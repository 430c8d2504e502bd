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

#include "fqsim/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fqsim/errors.hpp"

namespace fqsim::linalg {

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  Matrix gram = a.adjoint() * a;
  gram -= Matrix::Identity(a.rows(), a.cols());
  return max_abs(gram) <= tol;
}

bool is_involution(const Matrix& q, double tol) {
  if (q.rows() != q.cols()) return false;
  Matrix sq = q * q;
  sq -= Matrix::Identity(q.rows(), q.cols());
  return max_abs(sq) <= tol;
}

Matrix exact_expm(const Matrix& h, double t) {
  if (h.rows() != h.cols()) throw ValidationError("exact_expm: matrix must be square");
  if (!is_hermitian(h)) throw ValidationError("exact_expm: input is not Hermitian to 1e-12");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& lam = es.eigenvalues();
  Vector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    phases(i) = std::polar(1.0, -lam(i) * t);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double spectral_distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw ValidationError("spectral_distance: dimension mismatch");
  }
  Matrix d = u - v;
  if (d.rows() <= 256) {
    Eigen::JacobiSVD<Matrix> svd(d);
    return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
  }
  Eigen::BDCSVD<Matrix> svd(d);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double spectral_norm_apply(int dim, const std::function<Vector(const Vector&)>& apply,
                           const std::function<Vector(const Vector&)>& apply_adjoint,
                           int iterations) {
  // Power iteration on A^dag A with a fixed-seed start and one restart; the
  // larger of the two Rayleigh estimates is returned.
  double best = 0.0;
  for (int restart = 0; restart < 2; ++restart) {
    Rng rng(0x5eed0000 + static_cast<std::uint64_t>(restart));
    Vector v = random_state(dim, rng);
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
      Vector w = apply_adjoint(apply(v));
      double norm = w.norm();
      if (norm == 0.0) break;
      v = w / norm;
      if (std::abs(norm - lambda) <= 1e-14 * std::max(1.0, lambda) && it > 8) {
        lambda = norm;
        break;
      }
      lambda = norm;
    }
    best = std::max(best, std::sqrt(lambda));
  }
  return best;
}

Matrix fractional_power(const Matrix& q, double alpha) {
  if (!is_involution(q)) throw ValidationError("fractional_power: Q^2 != I to 1e-12");
  const Eigen::Index n = q.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Complex w = std::polar(1.0, -M_PI * alpha);
  return 0.5 * (id + q) + w * 0.5 * (id - q);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(rng.next_normal(), rng.next_normal());
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    Complex phase = (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
    q.col(j) *= phase;
  }
  return q;
}

Matrix random_involution(int dim, Rng& rng) {
  Matrix w = random_unitary(dim, rng);
  Vector signs(dim);
  bool has_plus = false;
  bool has_minus = false;
  for (int i = 0; i < dim; ++i) {
    bool plus = rng.next_below(2) == 0;
    signs(i) = plus ? 1.0 : -1.0;
    has_plus |= plus;
    has_minus |= !plus;
  }
  // Keep both eigenspaces populated so Q is never trivially +-I.
  if (!has_plus) signs(0) = 1.0;
  if (!has_minus) signs(dim - 1) = -1.0;
  return w * signs.asDiagonal() * w.adjoint();
}

Matrix random_hermitian(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(rng.next_normal(), rng.next_normal());
    }
  }
  return 0.5 * (g + g.adjoint());
}

Vector random_state(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.next_normal(), rng.next_normal());
  double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

}  // namespace fqsim::linalg
