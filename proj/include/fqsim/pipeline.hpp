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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fqsim/decompose.hpp"
#include "fqsim/engine.hpp"
#include "fqsim/hamiltonian.hpp"

namespace fqsim::pipeline {

// Error-budget fractions for decomposition / product formula / truncation.
struct EpsSplit {
  double dec = 1.0 / 3.0;
  double trot = 1.0 / 3.0;
  double seg = 1.0 / 3.0;
};

struct SimOptions {
  EpsSplit split{};
  // Per-segment-unitary budget divisor: eps_u = eps_seg / (scale * segments);
  // the default matches three applications of each segment unitary.
  int per_unitary_scale = 3;
  int max_m = tol::kMaxGadgetsPerSegment;
  int max_k = tol::kMaxTruncationOrder;
  int force_r = 0;      // 0 = calibrate
  int force_order = 0;  // 0 = calibrate, else 1 (Lie) or 2 (Strang)
};

// Paper-faithful parameter choices at formula level.  These are reported as
// such; the executor below re-derives desk-executable knobs and measures
// every error term instead of assuming the asymptotic bounds.
struct SimulationPlan {
  int d = 0;
  double max_norm = 0.0;
  double t = 0.0;
  double eps = 0.0;
  EpsSplit split{};

  double tau = 0.0;          // d^2 ||H||_max t
  double gamma = 0.0;        // eps_dec / (sqrt(2) d^3 t)
  long long eta_bound = 0;   // 6 d^2 ceil(||H||_max / gamma)
  long long r = 0;           // ceil((eta gamma t)^2 / eps_trot)
  double T = 0.0;            // 2 gamma eta t / pi
  long long segments = 0;    // ceil(5T)
  int k = 0;                 // Chernoff order at eps_u
  double eps_unitary = 0.0;
  long long predicted_queries = 0;  // segments * 3 * k
  long long m_per_segment = 0;      // formula level
  bool executable = false;
  std::string note;
};

SimulationPlan plan(int d, double max_norm, double t, double eps, const SimOptions& opt = {});

// Knobs the executor actually ran with, plus the independently measured
// error contributions.
struct ExecConfig {
  double gamma = 0.0;
  int eta = 0;
  int r = 0;
  int order = 1;  // 1 = Lie, 2 = Strang
  double T = 0.0;
  int segments = 0;
  int m_uniform = 0;
  int k_formula = 0;
  int k_exec = 0;
  double eps_unitary = 0.0;
  double dec_error = 0.0;   // measured ||e^{-iH_d t} - e^{-i gamma sum G t}||
  double trot_error = 0.0;  // measured against the dense program product
};

struct SimReport {
  SimulationPlan formula;
  ExecConfig exec;
  std::uint64_t queries_measured = 0;
  std::uint64_t queries_predicted = 0;
  std::uint64_t oracle_slot_queries = 0;
  double spectral_error = 0.0;
  Complex global_phase{1.0, 0.0};
  double wall_seconds = 0.0;
};

struct SimulationResult {
  Matrix output;  // phase-corrected operator on the doubled register
  SimReport report;
};

// End-to-end simulation of sigma_x (x) H for time t against the exact
// matrix-exponential oracle.  Throws ValidationError when no desk-scale
// configuration exists at all; otherwise runs and reports measured errors.
SimulationResult simulate_sparse(const ham::SparseHamiltonianOracle& h, double t, double eps,
                                 const SimOptions& opt = {});

struct SweepRow {
  double eps = 0.0;
  int k = 0;
  int segments = 0;
  std::uint64_t queries_predicted = 0;
  std::uint64_t queries_measured = 0;
  double error_measured = 0.0;
  double seconds = 0.0;
};

std::vector<SweepRow> sweep(const ham::SparseHamiltonianOracle& h, double t,
                            const std::vector<double>& eps_list, const SimOptions& opt = {},
                            bool wall_timing = false);

// Measured product-formula error for the given knobs (ablation hook).
double trotter_error_measured(const std::vector<decomp::SignedPermTerm>& terms, double gamma,
                              double t, int r, int order);

// (<+| (x) I) U (|+> (x) I): the top-qubit sector that recovers e^{-iHt}.
Matrix plus_sector_block(const Matrix& doubled_op);

}  // namespace fqsim::pipeline
