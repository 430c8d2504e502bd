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

#include "fqsim/hamiltonian.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "fqsim/errors.hpp"
#include "fqsim/tolerances.hpp"

namespace fqsim::ham {

namespace {

constexpr double kZeroCut = 0.0;  // zero entries are never stored

void validate_rows(std::int64_t dim, const std::vector<std::vector<SlotEntry>>& rows) {
  if (static_cast<std::int64_t>(rows.size()) != dim) {
    throw ValidationError("oracle: row count does not match dimension");
  }
  // Hermiticity and sorted slots by brute-force enumeration (desk scale).
  std::map<std::pair<std::int64_t, std::int64_t>, Complex> entries;
  for (std::int64_t i = 0; i < dim; ++i) {
    std::int64_t prev = -1;
    for (const SlotEntry& e : rows[static_cast<std::size_t>(i)]) {
      if (e.column < 0 || e.column >= dim) throw ValidationError("oracle: column out of range");
      if (e.column <= prev) throw ValidationError("oracle: slots not strictly increasing");
      if (std::abs(e.value) == kZeroCut) throw ValidationError("oracle: explicit zero entry");
      prev = e.column;
      entries[{i, e.column}] = e.value;
    }
  }
  for (const auto& [coord, value] : entries) {
    auto mirror = entries.find({coord.second, coord.first});
    if (mirror == entries.end() || std::abs(mirror->second - std::conj(value)) > tol::structural) {
      throw ValidationError("oracle: data is not Hermitian");
    }
  }
}

}  // namespace

SparseHamiltonianOracle::SparseHamiltonianOracle(int n_qubits,
                                                 std::vector<std::vector<SlotEntry>> rows)
    : n_qubits_(n_qubits),
      rows_(std::move(rows)),
      meter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
  if (n_qubits_ < 0 || n_qubits_ > 20) throw ValidationError("oracle: qubit count out of range");
  validate_rows(dim(), rows_);
  d_ = 0;
  max_norm_ = 0.0;
  for (const auto& row : rows_) {
    d_ = std::max(d_, static_cast<int>(row.size()));
    for (const SlotEntry& e : row) max_norm_ = std::max(max_norm_, std::abs(e.value));
  }
}

std::optional<SlotEntry> SparseHamiltonianOracle::query(std::int64_t row, int slot) const {
  if (row < 0 || row >= dim()) throw ValidationError("oracle: row out of range");
  if (slot < 1 || slot > d_) throw ValidationError("oracle: slot must lie in [1, d]");
  meter_->fetch_add(1);
  const auto& r = rows_[static_cast<std::size_t>(row)];
  if (slot > static_cast<int>(r.size())) return std::nullopt;
  return r[static_cast<std::size_t>(slot - 1)];
}

HamiltonianStats stats_of(const SparseHamiltonianOracle& h) {
  return HamiltonianStats{h.max_norm(), h.sparsity(), h.qubits()};
}

Matrix dense_of(const SparseHamiltonianOracle& h) {
  if (static_cast<std::size_t>(h.dim()) > tol::dense_limit()) {
    throw ValidationError("dense_of: dimension exceeds the dense limit");
  }
  Matrix m = Matrix::Zero(h.dim(), h.dim());
  for (std::int64_t i = 0; i < h.dim(); ++i) {
    for (int slot = 1; slot <= h.sparsity(); ++slot) {
      if (auto e = h.query(i, slot)) m(i, e->column) = e->value;
    }
  }
  return m;
}

SparseHamiltonianOracle from_dense(int n_qubits, const Matrix& m) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  if (m.rows() != dim || m.cols() != dim) throw ValidationError("from_dense: bad dimensions");
  std::vector<std::vector<SlotEntry>> rows(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) {
    for (std::int64_t j = 0; j < dim; ++j) {
      if (std::abs(m(i, j)) != 0.0) rows[static_cast<std::size_t>(i)].push_back({j, m(i, j)});
    }
  }
  return SparseHamiltonianOracle(n_qubits, std::move(rows));
}

SparseHamiltonianOracle load_coo(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  int d_hint = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, Complex> upper;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> d_hint) || n < 0) {
        throw ParseError("coo: malformed header at line " + std::to_string(line_no));
      }
      continue;
    }
    std::int64_t row = 0;
    std::int64_t col = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> row >> col >> re >> im)) {
      throw ParseError("coo: malformed entry at line " + std::to_string(line_no));
    }
    const std::int64_t dim = std::int64_t{1} << n;
    if (row < 0 || col < 0 || row >= dim || col >= dim) {
      throw ParseError("coo: index out of range at line " + std::to_string(line_no));
    }
    if (row > col) {
      throw ParseError("coo: lower-triangle entry at line " + std::to_string(line_no) +
                       " (mirror is implied)");
    }
    if (row == col && im != 0.0) {
      throw ValidationError("coo: diagonal entry with nonzero imaginary part at line " +
                            std::to_string(line_no));
    }
    auto [it, inserted] = upper.emplace(std::make_pair(row, col), Complex(re, im));
    (void)it;
    if (!inserted) {
      throw ValidationError("coo: duplicate coordinate at line " + std::to_string(line_no));
    }
  }
  if (n < 0) throw ParseError("coo: missing header line");
  const std::int64_t dim = std::int64_t{1} << n;
  std::vector<std::vector<SlotEntry>> rows(static_cast<std::size_t>(dim));
  for (const auto& [coord, value] : upper) {
    if (std::abs(value) == 0.0) continue;
    rows[static_cast<std::size_t>(coord.first)].push_back({coord.second, value});
    if (coord.first != coord.second) {
      rows[static_cast<std::size_t>(coord.second)].push_back({coord.first, std::conj(value)});
    }
  }
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(),
              [](const SlotEntry& a, const SlotEntry& b) { return a.column < b.column; });
  }
  return SparseHamiltonianOracle(n, std::move(rows));
}

std::string save_coo(const SparseHamiltonianOracle& h) {
  std::ostringstream out;
  out << h.qubits() << " " << h.sparsity() << "\n";
  char buf[64];
  for (std::int64_t i = 0; i < h.dim(); ++i) {
    for (const SlotEntry& e : h.raw_rows()[static_cast<std::size_t>(i)]) {
      if (e.column < i) continue;  // canonical form keeps the upper triangle
      out << i << " " << e.column << " ";
      std::snprintf(buf, sizeof buf, "%.17g", e.value.real());
      out << buf << " ";
      std::snprintf(buf, sizeof buf, "%.17g", e.value.imag());
      out << buf << "\n";
    }
  }
  return out.str();
}

SparseHamiltonianOracle random_sparse(int n_qubits, int d, std::uint64_t seed, int denominator,
                                      int magnitude) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  if (d < 0 || d > dim) throw ValidationError("random_sparse: need 0 <= d <= 2^n");
  if (denominator <= 0 || magnitude <= 0) throw ValidationError("random_sparse: bad grid");
  Rng rng(seed);
  auto grid_value = [&](bool diagonal) {
    // Nonzero dyadic-grid value; diagonal entries must be real.
    while (true) {
      const int span = 2 * magnitude + 1;
      int re = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(span))) - magnitude;
      int im = diagonal
                   ? 0
                   : static_cast<int>(rng.next_below(static_cast<std::uint64_t>(span))) - magnitude;
      if (re == 0 && im == 0) continue;
      return Complex(static_cast<double>(re) / denominator, static_cast<double>(im) / denominator);
    }
  };

  // The support is a union of d random involutions of the basis (fixed
  // points become diagonal entries); collisions between rounds are retried
  // a bounded number of times, then accepted.
  std::vector<std::vector<SlotEntry>> best_rows;
  int best_full_rows = -1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::map<std::pair<std::int64_t, std::int64_t>, Complex> entries;
    for (int round = 0; round < d; ++round) {
      std::vector<std::int64_t> perm(static_cast<std::size_t>(dim));
      for (std::int64_t i = 0; i < dim; ++i) perm[static_cast<std::size_t>(i)] = i;
      for (std::int64_t i = dim - 1; i > 0; --i) {
        std::int64_t j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      }
      // Pair consecutive elements of the shuffle; an odd leftover is a fixed point.
      for (std::int64_t p = 0; p + 1 < dim; p += 2) {
        std::int64_t a = perm[static_cast<std::size_t>(p)];
        std::int64_t b = perm[static_cast<std::size_t>(p + 1)];
        if (a > b) std::swap(a, b);
        entries[{a, b}] = grid_value(a == b);
      }
      if (dim % 2 == 1 || rng.next_below(4) == 0) {
        std::int64_t a = perm[static_cast<std::size_t>(dim - 1)];
        entries[{a, a}] = grid_value(true);
      }
    }
    std::vector<std::vector<SlotEntry>> rows(static_cast<std::size_t>(dim));
    for (const auto& [coord, value] : entries) {
      rows[static_cast<std::size_t>(coord.first)].push_back({coord.second, value});
      if (coord.first != coord.second) {
        rows[static_cast<std::size_t>(coord.second)].push_back({coord.first, std::conj(value)});
      }
    }
    int full = 0;
    bool over = false;
    for (auto& row : rows) {
      std::sort(row.begin(), row.end(),
                [](const SlotEntry& a, const SlotEntry& b) { return a.column < b.column; });
      if (static_cast<int>(row.size()) == d) ++full;
      if (static_cast<int>(row.size()) > d) over = true;
    }
    if (over) continue;
    if (full > best_full_rows) {
      best_full_rows = full;
      best_rows = rows;
    }
    if (full == dim) break;
  }
  if (best_full_rows < 0) throw ValidationError("random_sparse: infeasible (n, d)");
  return SparseHamiltonianOracle(n_qubits, std::move(best_rows));
}

SparseHamiltonianOracle bipartite_double(const SparseHamiltonianOracle& h) {
  const std::int64_t dim = h.dim();
  std::vector<std::vector<SlotEntry>> rows(static_cast<std::size_t>(2 * dim));
  for (std::int64_t i = 0; i < dim; ++i) {
    for (const SlotEntry& e : h.raw_rows()[static_cast<std::size_t>(i)]) {
      rows[static_cast<std::size_t>(i)].push_back({e.column + dim, e.value});
      rows[static_cast<std::size_t>(i + dim)].push_back({e.column, e.value});
    }
  }
  return SparseHamiltonianOracle(h.qubits() + 1, std::move(rows));
}

}  // namespace fqsim::ham
