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

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqsim/linalg.hpp"
#include "fqsim/rng.hpp"

namespace fqsim::ham {

struct SlotEntry {
  std::int64_t column = 0;
  Complex value{0.0, 0.0};
};

// Black-box d-sparse Hermitian matrix answered row-by-index, with a meter
// counting oracle invocations.  Rows hold their nonzeros sorted by column;
// zero values are never stored, so structural sparsity equals numerical
// sparsity and the edge coloring is deterministic.
class SparseHamiltonianOracle {
 public:
  SparseHamiltonianOracle(int n_qubits, std::vector<std::vector<SlotEntry>> rows);

  int qubits() const { return n_qubits_; }
  std::int64_t dim() const { return std::int64_t{1} << n_qubits_; }
  int sparsity() const { return d_; }
  double max_norm() const { return max_norm_; }

  // The jth nonzero of row i in column order (1-based slot j in [d]), or
  // empty when the row has fewer than j nonzeros.  Charges the meter by 1.
  std::optional<SlotEntry> query(std::int64_t row, int slot) const;

  std::uint64_t meter() const { return meter_->load(); }
  void reset_meter() const { meter_->store(0); }

  int row_occupancy(std::int64_t row) const {
    return static_cast<int>(rows_[static_cast<std::size_t>(row)].size());
  }

  // Structural view for serialization and the doubling construction; not
  // part of the metered black-box interface.
  const std::vector<std::vector<SlotEntry>>& raw_rows() const { return rows_; }

 private:
  int n_qubits_;
  int d_;
  double max_norm_;
  std::vector<std::vector<SlotEntry>> rows_;
  // Shared so oracles stay copyable while concurrent sweeps report exact totals.
  std::shared_ptr<std::atomic<std::uint64_t>> meter_;
};

struct HamiltonianStats {
  double max_norm = 0.0;
  int d = 0;
  int n = 0;
};

HamiltonianStats stats_of(const SparseHamiltonianOracle& h);

// Full matrix reconstruction by querying every (row, slot) pair; the meter
// is charged rows x d.  Throws when the dimension exceeds the dense limit.
Matrix dense_of(const SparseHamiltonianOracle& h);

// Builds a validated oracle from a dense Hermitian matrix (test helper and
// the common back end of the loaders).
SparseHamiltonianOracle from_dense(int n_qubits, const Matrix& m);

// Coordinate text format: header "n d_hint", then lines "row col re im"
// (0-based, upper-triangle-or-diagonal; the mirror entry is implied).
SparseHamiltonianOracle load_coo(const std::string& text);
std::string save_coo(const SparseHamiltonianOracle& h);

// Deterministic d-sparse Hermitian instance.  Off-diagonal entries are
// (re + i im)/denominator with re, im drawn from {-magnitude..magnitude};
// the dyadic grid keeps the 1-sparse rounding step exact when gamma divides
// 1/(2 denominator).  Exactly d-sparse up to symmetry collisions.
SparseHamiltonianOracle random_sparse(int n_qubits, int d, std::uint64_t seed,
                                      int denominator = 16, int magnitude = 1);

// Oracle for sigma_x (x) H on n+1 qubits: same sparsity, same max norm, and
// bipartite by the top qubit.  Each query forwards one query to the parent.
SparseHamiltonianOracle bipartite_double(const SparseHamiltonianOracle& h);

}  // namespace fqsim::ham
