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

#include "fqsim/demos.hpp"

#include <cmath>

#include "fqsim/errors.hpp"

namespace fqsim::demos {

Matrix parity_chain(int n) {
  if (n < 1) throw ValidationError("parity_chain: N must be >= 1");
  Matrix h = Matrix::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    const double v = std::sqrt(static_cast<double>(n - i) * (i + 1)) / n;
    h(i, i + 1) = v;
    h(i + 1, i) = v;
  }
  return h;
}

double parity_overlap(int n, double t) {
  const Matrix u = linalg::exact_expm(parity_chain(n), t);
  return std::abs(u(n, 0));
}

Matrix transverse_field_sum(int n) {
  const std::int64_t dim = std::int64_t{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    for (int j = 0; j < n; ++j) {
      h(x ^ (std::int64_t{1} << j), x) += 1.0;
    }
  }
  return h;
}

Matrix parity_oracle_hamiltonian(const std::vector<int>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw ValidationError("parity_oracle_hamiltonian: empty input string");
  // Vertex (i, j) at index 2i + j.
  Matrix h = Matrix::Zero(2 * (n + 1), 2 * (n + 1));
  for (int i = 1; i <= n; ++i) {
    const double v = std::sqrt(static_cast<double>(n - i + 1) * i) / n;
    for (int j = 0; j < 2; ++j) {
      const int from = 2 * i + j;
      const int to = 2 * (i - 1) + (j ^ x[static_cast<std::size_t>(i - 1)]);
      h(from, to) = v;
      h(to, from) = v;
    }
  }
  return h;
}

ParityDecode parity_decode(const std::vector<int>& x, double t, double eps_sim, double safety) {
  if (t <= 0.0) throw ValidationError("parity_decode: t must be positive");
  const int n = static_cast<int>(x.size());
  int par = 0;
  for (int b : x) par ^= b;

  const Matrix h = parity_oracle_hamiltonian(x);
  Vector state = Vector::Zero(h.rows());
  state(0) = 1.0;  // |0, 0>
  state = linalg::exact_expm(h, t) * state;
  if (eps_sim > 0.0) {
    // Adversarial injection: all of the error budget lands on the
    // wrong-parity endpoint.
    Vector bad = Vector::Zero(h.rows());
    bad(2 * n + (1 ^ par)) = 1.0;
    state += eps_sim * bad;
    state /= state.norm();
  }

  ParityDecode out;
  const double amp_right = std::abs(state(2 * n + par));
  const double amp_wrong = std::abs(state(2 * n + (1 ^ par)));
  out.success_amplitude = amp_right;
  out.wrong_sector = amp_wrong;
  out.parity = amp_right >= amp_wrong ? par : (1 ^ par);
  const double ideal = std::pow(std::abs(std::sin(t / n)), n);
  out.decoded = ideal > safety * eps_sim;
  return out;
}

int epsilon_threshold(double eps, double t, double safety) {
  if (eps <= 0.0 || eps >= 1.0) throw ValidationError("epsilon_threshold: eps must lie in (0,1)");
  auto overlap = [&](int n) { return std::pow(std::abs(std::sin(t / n)), n); };
  int n = 1;
  while (overlap(n + 1) > safety * eps && n < 4096) ++n;
  if (overlap(1) <= safety * eps) return 1;  // floor
  return n;
}

double bessel_j(int n, double t) {
  if (n < 0) throw ValidationError("bessel_j: order must be >= 0");
  // J_n(t) = sum_s (-1)^s (t/2)^{n+2s} / (s! (n+s)!), stop when the next
  // term can no longer move the double result.
  const double half = t / 2.0;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  double sum = term;
  for (int s = 1; s < 200; ++s) {
    term *= -(half * half) / (static_cast<double>(s) * (n + s));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

std::int64_t walk_index(int i, int j, int k, int w) {
  if (i < -w || i > w || j < 0 || j > 1 || k < 0 || k > 1) {
    throw ValidationError("walk_index: site out of range");
  }
  return (static_cast<std::int64_t>(i + w) * 2 + j) * 2 + k;
}

Matrix walk_query_term(int a, const std::vector<int>& x, int w) {
  if (a < 1 || a > 4) throw ValidationError("walk_query_term: a must be 1..4");
  const int n = static_cast<int>(x.size());
  if (w < n) throw ValidationError("walk_query_term: truncation too small for the input");
  const std::int64_t dim = 4 * (2 * static_cast<std::int64_t>(w) + 1);

  // Each term is a conjugation of a 0/1 diagonal projector by a direct sum
  // of Hadamards over the per-i vertex pairs: the all-ones/2 block carries
  // the half-weight edge plus the self-loops that cancel in the assembly.
  Matrix had = Matrix::Zero(dim, dim);
  Matrix proj = Matrix::Zero(dim, dim);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 1; i <= n; ++i) {
    std::int64_t p = 0, q = 0;
    switch (a) {
      case 1:
        p = walk_index(i, 0, 0, w);
        q = walk_index(i, 0, 1, w);
        break;
      case 2:
        p = walk_index(i, 1, 0, w);
        q = walk_index(i, 1, 1, w);
        break;
      case 3:
        p = walk_index(i, 0, 0, w);
        q = walk_index(i, 1, 1, w);
        break;
      case 4:
        p = walk_index(i, 0, 1, w);
        q = walk_index(i, 1, 0, w);
        break;
    }
    had(p, p) = r;
    had(p, q) = r;
    had(q, p) = r;
    had(q, q) = -r;
    if (x[static_cast<std::size_t>(i - 1)]) proj(p, p) = 1.0;
  }
  // Vertices not in any pair of this term: identity conjugation.
  for (std::int64_t v = 0; v < dim; ++v) {
    bool in_pair = false;
    for (std::int64_t c = 0; c < dim; ++c) {
      if (std::abs(had(v, c)) != 0.0) {
        in_pair = true;
        break;
      }
    }
    if (!in_pair) had(v, v) = 1.0;
  }
  return had.adjoint() * proj * had;
}

Matrix walk_driving_hamiltonian(int w) {
  const std::int64_t dim = 4 * (2 * static_cast<std::int64_t>(w) + 1);
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = -w; i <= w; ++i) {
    for (int j = 0; j < 2; ++j) {
      h(walk_index(i, j, 0, w), walk_index(i, j, 1, w)) = 0.5;
      h(walk_index(i, j, 1, w), walk_index(i, j, 0, w)) = 0.5;
      if (i + 1 <= w) {
        h(walk_index(i + 1, j, 0, w), walk_index(i, j, 1, w)) = 0.5;
        h(walk_index(i, j, 1, w), walk_index(i + 1, j, 0, w)) = 0.5;
      }
    }
  }
  return h;
}

Matrix bessel_walk_hamiltonian(const std::vector<int>& x, int w) {
  Matrix h = walk_driving_hamiltonian(w);
  h -= walk_query_term(1, x, w);
  h -= walk_query_term(2, x, w);
  h += walk_query_term(3, x, w);
  h += walk_query_term(4, x, w);
  return h;
}

double bessel_overlap(int n, double t, int w) {
  // Any input string works; parity enters only through the target label.
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; i += 2) x[static_cast<std::size_t>(i)] = 1;
  const Matrix h = bessel_walk_hamiltonian(x, w);
  int par = 0;
  for (int b : x) par ^= b;
  Vector state = Vector::Zero(h.rows());
  state(walk_index(0, 0, 1, w)) = 1.0;
  state = linalg::exact_expm(h, t) * state;
  return std::abs(state(walk_index(n, par, 1, w)));
}

}  // namespace fqsim::demos
