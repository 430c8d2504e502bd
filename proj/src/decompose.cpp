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

#include "fqsim/decompose.hpp"

#include <cmath>

#include "fqsim/errors.hpp"

namespace fqsim::decomp {

namespace {

// Nearest multiple of 2*gamma; a tie (entry exactly at an odd multiple of
// gamma) rounds toward zero so the term count never grows.
std::int64_t level_count(double value, double gamma) {
  const double q = std::abs(value) / (2.0 * gamma);
  const double base = std::floor(q);
  const double frac = q - base;
  double levels = (frac > 0.5) ? base + 1.0 : base;
  return static_cast<std::int64_t>(levels);
}

bool is_left(const ham::SparseHamiltonianOracle& doubled, std::int64_t v) {
  return v < doubled.dim() / 2;
}

}  // namespace

Matrix SignedPermTerm::dense() const {
  Matrix m = Matrix::Zero(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    m(r, column[static_cast<std::size_t>(r)]) = phase[static_cast<std::size_t>(r)];
  }
  return m;
}

bool SignedPermTerm::valid(double tol) const {
  if (static_cast<std::int64_t>(column.size()) != dim) return false;
  std::vector<int> col_hits(static_cast<std::size_t>(dim), 0);
  for (std::int64_t r = 0; r < dim; ++r) {
    const std::int64_t c = column[static_cast<std::size_t>(r)];
    if (c < 0 || c >= dim) return false;
    col_hits[static_cast<std::size_t>(c)]++;
    const Complex v = phase[static_cast<std::size_t>(r)];
    if (std::abs(std::abs(v) - 1.0) > tol) return false;
    // Hermitian pairing: entry (r, c) must equal conj of entry (c, r).
    if (column[static_cast<std::size_t>(c)] != r) return false;
    if (std::abs(std::conj(phase[static_cast<std::size_t>(c)]) - v) > tol) return false;
  }
  for (int hits : col_hits) {
    if (hits != 1) return false;
  }
  return true;
}

Color color_edge(const ham::SparseHamiltonianOracle& doubled, std::int64_t u, std::int64_t v) {
  if (!is_left(doubled, u) || is_left(doubled, v)) {
    throw ValidationError("color_edge: u must be in the left part, v in the right");
  }
  auto rank_of = [&](std::int64_t row, std::int64_t target) {
    for (int slot = 1; slot <= doubled.sparsity(); ++slot) {
      auto e = doubled.query(row, slot);
      if (!e) break;
      if (e->column == target) return slot;
    }
    throw ValidationError("color_edge: (u, v) is not an edge");
  };
  return Color{rank_of(u, v), rank_of(v, u)};
}

std::optional<ham::SlotEntry> slice_query(const ham::SparseHamiltonianOracle& doubled, Color color,
                                          std::int64_t row) {
  if (color.a < 1 || color.a > doubled.sparsity() || color.b < 1 ||
      color.b > doubled.sparsity()) {
    throw ValidationError("slice_query: color out of range");
  }
  if (row < 0 || row >= doubled.dim()) throw ValidationError("slice_query: row out of range");
  const int own_rank = is_left(doubled, row) ? color.a : color.b;
  const int peer_rank = is_left(doubled, row) ? color.b : color.a;
  auto candidate = doubled.query(row, own_rank);
  if (!candidate) return std::nullopt;  // isolated-vertex / short-row branch
  auto back = doubled.query(candidate->column, peer_rank);
  if (!back || back->column != row) return std::nullopt;
  return candidate;
}

Matrix slice_dense(const ham::SparseHamiltonianOracle& doubled, Color color) {
  Matrix m = Matrix::Zero(doubled.dim(), doubled.dim());
  for (std::int64_t row = 0; row < doubled.dim(); ++row) {
    if (auto e = slice_query(doubled, color, row)) m(row, e->column) = e->value;
  }
  return m;
}

std::vector<SignedPermTerm> split_one_sparse(const Matrix& g, double gamma) {
  if (gamma <= 0.0) throw ValidationError("split_one_sparse: gamma must be positive");
  const std::int64_t dim = g.rows();
  if (g.cols() != dim) throw ValidationError("split_one_sparse: matrix must be square");
  if (!linalg::is_hermitian(g)) throw ValidationError("split_one_sparse: input not Hermitian");

  // 1-sparsity and the row -> (column, value) map.
  std::vector<std::int64_t> col_of(static_cast<std::size_t>(dim), -1);
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t c = 0; c < dim; ++c) {
      if (std::abs(g(r, c)) == 0.0) continue;
      if (col_of[static_cast<std::size_t>(r)] >= 0) {
        throw ValidationError("split_one_sparse: input is not 1-sparse");
      }
      col_of[static_cast<std::size_t>(r)] = c;
    }
  }

  // Signed level counts per class.  X: off-diagonal real (symmetric),
  // Y: off-diagonal imaginary (antisymmetric), Z: diagonal.
  struct ClassEntry {
    std::int64_t row, col;
    std::int64_t levels;  // signed
  };
  std::vector<ClassEntry> ex, ey, ez;
  std::int64_t lx = 0, ly = 0, lz = 0;
  for (std::int64_t r = 0; r < dim; ++r) {
    const std::int64_t c = col_of[static_cast<std::size_t>(r)];
    if (c < 0) continue;
    const Complex v = g(r, c);
    if (r == c) {
      std::int64_t n = level_count(v.real(), gamma);
      if (n != 0) {
        ez.push_back({r, c, v.real() > 0 ? n : -n});
        lz = std::max(lz, n);
      }
      continue;
    }
    std::int64_t nx = level_count(v.real(), gamma);
    if (nx != 0) {
      ex.push_back({r, c, v.real() > 0 ? nx : -nx});
      lx = std::max(lx, nx);
    }
    std::int64_t ny = level_count(v.imag(), gamma);
    if (ny != 0) {
      ey.push_back({r, c, v.imag() > 0 ? ny : -ny});
      ly = std::max(ly, ny);
    }
  }

  std::vector<SignedPermTerm> terms;
  auto emit_class = [&](char xi, const std::vector<ClassEntry>& entries, std::int64_t max_level) {
    for (std::int64_t level = 1; level <= max_level; ++level) {
      for (int sign : {+1, -1}) {
        SignedPermTerm t;
        t.dim = dim;
        t.xi = xi;
        t.level = static_cast<int>(level);
        t.sign = sign;
        t.column.assign(static_cast<std::size_t>(dim), -1);
        t.phase.assign(static_cast<std::size_t>(dim), Complex(0, 0));
        for (const ClassEntry& e : entries) {
          if (std::abs(e.levels) < level) continue;
          const double s = e.levels > 0 ? 1.0 : -1.0;
          // Stored value of the Hermitian term: the Y class carries i times
          // the antisymmetric +-1 pattern.
          const Complex value = (xi == 'Y') ? Complex(0.0, s) : Complex(s, 0.0);
          t.column[static_cast<std::size_t>(e.row)] = e.col;
          t.phase[static_cast<std::size_t>(e.row)] = value;
        }
        // Columns untouched by this level take the +-1 (or -+1 for Y, where
        // the stored diagonal is i * (+-i)) completion that removes the zero
        // eigenvalues.
        for (std::int64_t r = 0; r < dim; ++r) {
          if (t.column[static_cast<std::size_t>(r)] >= 0) continue;
          t.column[static_cast<std::size_t>(r)] = r;
          const double completion = (xi == 'Y') ? -static_cast<double>(sign)
                                                : static_cast<double>(sign);
          t.phase[static_cast<std::size_t>(r)] = Complex(completion, 0.0);
        }
        terms.push_back(std::move(t));
      }
    }
  };
  emit_class('X', ex, lx);
  emit_class('Y', ey, ly);
  emit_class('Z', ez, lz);
  return terms;
}

std::uint64_t local_coloring(const std::vector<int>& support_bits, std::uint64_t x,
                             std::uint64_t y) {
  std::uint64_t support_mask = 0;
  for (int b : support_bits) support_mask |= (std::uint64_t{1} << b);
  const std::uint64_t diff = x ^ y;
  if ((diff & ~support_mask) != 0) {
    throw ValidationError("local_coloring: states differ outside the support");
  }
  std::uint64_t color = 0;
  for (std::size_t i = 0; i < support_bits.size(); ++i) {
    if (diff & (std::uint64_t{1} << support_bits[i])) color |= (std::uint64_t{1} << i);
  }
  return color;
}

Decomposition decompose_full(const ham::SparseHamiltonianOracle& h, double gamma) {
  if (gamma <= 0.0) throw ValidationError("decompose_full: gamma must be positive");
  ham::SparseHamiltonianOracle doubled = ham::bipartite_double(h);
  Decomposition out;
  out.gamma = gamma;
  out.doubled_qubits = doubled.qubits();
  const int d = doubled.sparsity();
  for (int a = 1; a <= d; ++a) {
    for (int b = 1; b <= d; ++b) {
      Matrix slice = slice_dense(doubled, Color{a, b});
      std::vector<SignedPermTerm> terms = split_one_sparse(slice, gamma);
      for (SignedPermTerm& t : terms) {
        t.color = Color{a, b};
        out.terms.push_back(std::move(t));
      }
    }
  }
  Matrix recon = reconstruct(out.terms, gamma, doubled.dim());
  out.reconstruction_error = linalg::max_abs(ham::dense_of(doubled) - recon);
  return out;
}

Matrix reconstruct(const std::vector<SignedPermTerm>& terms, double gamma, std::int64_t dim) {
  Matrix sum = Matrix::Zero(dim, dim);
  for (const SignedPermTerm& t : terms) sum += t.dense();
  return gamma * sum;
}

}  // namespace fqsim::decomp
