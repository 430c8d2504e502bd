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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fqsim/hamiltonian.hpp"
#include "fqsim/linalg.hpp"

namespace fqsim::decomp {

// Ordered color pair (a, b), 1-based ranks in [d].
struct Color {
  int a = 0;
  int b = 0;
};

// A +-1-eigenvalue 1-sparse Hermitian term: exactly one nonzero per row and
// column, phases in {+1, -1, +i, -i}, squaring to the identity.
struct SignedPermTerm {
  std::int64_t dim = 0;
  std::vector<std::int64_t> column;  // row -> column
  std::vector<Complex> phase;        // row -> entry value
  char xi = 'X';                     // X, Y or Z class
  int level = 0;                     // 1-based level within the class
  int sign = +1;                     // the +- copy of the level
  Color color;                       // originating slice, (0,0) when standalone

  Matrix dense() const;
  bool valid(double tol = tol::structural) const;
};

// Rank of v in u's sorted neighbor list and vice versa; one oracle row scan
// (at most d slot queries) per rank.  Throws when (u, v) is not an edge or
// the vertices sit in the same part of the bipartition.
Color color_edge(const ham::SparseHamiltonianOracle& doubled, std::int64_t u, std::int64_t v);

// The unique nonzero of the color-(a, b) slice in the given row, found by
// the rank-then-verify procedure (roles of a and b swap on the right part).
// Issues at most two slot queries, exactly two whenever a candidate exists.
std::optional<ham::SlotEntry> slice_query(const ham::SparseHamiltonianOracle& doubled, Color color,
                                          std::int64_t row);

// Dense slice materialization through slice_query (test and split back end).
Matrix slice_dense(const ham::SparseHamiltonianOracle& doubled, Color color);

// Rounds the 1-sparse Hermitian G to multiples of 2*gamma (ties toward
// zero), splits into X/Y/Z classes, levels and +- copies.  Reconstruction
// satisfies ||G - gamma * sum||_max <= sqrt(2) gamma with at most
// 6*ceil(||G||_max/gamma) terms.
std::vector<SignedPermTerm> split_one_sparse(const Matrix& g, double gamma);

// XOR pattern of x and y restricted to the k support bits; 2^k colors.
// Throws when x and y differ outside the support.
std::uint64_t local_coloring(const std::vector<int>& support_bits, std::uint64_t x,
                             std::uint64_t y);

struct Decomposition {
  std::vector<SignedPermTerm> terms;
  double gamma = 0.0;
  int doubled_qubits = 0;
  // Certified max-norm reconstruction error ||sigma_x (x) H - gamma sum G||_max.
  double reconstruction_error = 0.0;
};

// Full chain: bipartite doubling, all d^2 colored slices, 1-sparse splitting.
Decomposition decompose_full(const ham::SparseHamiltonianOracle& h, double gamma);

Matrix reconstruct(const std::vector<SignedPermTerm>& terms, double gamma, std::int64_t dim);

}  // namespace fqsim::decomp
