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
#include <vector>

#include "fqsim/decompose.hpp"
#include "fqsim/linalg.hpp"

namespace fqsim::fq {

// Derived quantities of one fractional query.  q = 1/(c+s)^2 = 1/(1+sin(pi a)).
struct GadgetParams {
  double alpha = 0.0;
  double c = 1.0;
  double s = 0.0;
  double q = 1.0;
};

GadgetParams gadget_params(double alpha);

// 2x2 gates of the gadget.  The closing phase gate carries an extra global
// factor e^{-i pi alpha} so the gadget's zero-control block comes out as
// sqrt(q) e^{-i pi alpha/2} Q^alpha; without it the raw gate product gives
// the same block times e^{i pi alpha}.
Matrix gate_r(double alpha);
Matrix gate_p(double alpha);

// The single-gadget circuit R_a P_a CQ R_a on control (x) system, as one
// dense unitary.
Matrix gadget_circuit(const Matrix& q, double alpha);

struct QueryStep {
  int oracle = 0;  // index into the program's oracle set
  double alpha = 0.0;
};

// Interleaved drives and fractional queries over a set of +-1-eigenvalue
// oracles; drives may be empty, meaning all-identity (the Trotter case).
// The c-number ledger collects scalar phases factored out of the steps.
struct FractionalQueryProgram {
  int system_dim = 1;
  std::vector<Matrix> oracles;
  std::vector<decomp::SignedPermTerm> perm_oracles;  // set when oracles are -G_j
  std::vector<QueryStep> steps;
  std::vector<Matrix> drives;  // size steps+1 when non-empty
  Complex phase{1.0, 0.0};

  double cost() const;
  bool identity_drives() const { return drives.empty(); }
  Matrix drive(std::size_t i) const;
  void validate() const;
};

// U_m Q^{a_m} ... U_1 Q^{a_1} U_0 on the system register (ledger excluded).
Matrix program_product(const FractionalQueryProgram& p);

// One <= 1/5-cost piece with its gadget bookkeeping.
struct SegmentSpec {
  FractionalQueryProgram chunk;
  double p = 1.0;           // prod q_i, > 1/4 for cost <= 1/5
  double fudge_angle = 0.0; // acos(1/(2 sqrt p))
  double theta = 0.0;       // -sum pi a_i / 2 mod 2pi
  double mu = 0.0;          // sum s_i/(c_i+s_i)
  int m() const { return static_cast<int>(chunk.steps.size()); }
};

SegmentSpec build_segment(FractionalQueryProgram chunk);

// Fudge rotation B: |0> -> (1/(2 sqrt p))|0> + sqrt(1 - 1/(4p))|1>.
Matrix fudge_gate(double p);

// Full segment operator on fudge (x) 2^m controls (x) system; small m only.
Matrix segment_operator_dense(const SegmentSpec& spec);

// Chernoff tail e^{k-mu} (mu/k)^k, evaluated in the log domain; zero when
// mu = 0.  Valid for k > mu, which holds throughout since mu <= pi/10.
double chernoff_tail_bound(double mu, int k);
// Operator-norm error bound sqrt(2 - 2 sqrt(1 - tail)) implied by the tail.
double truncation_error_bound(double mu, int k);

double segment_mu(const std::vector<double>& alphas);

// Smallest k >= 1 with chernoff_tail_bound(mu, k) < eps^2/2.
int truncation_order(const std::vector<double>& alphas, double eps_seg);

// H_j = pi (I + G)/2: eigenvalues {0, pi}, e^{-i H_j} = -G.
Matrix adjust_eigenvalues(const Matrix& g);

// Q = sum_j |j><j| (x) e^{-i H_j} on index (x) system, built through the
// matrix-exponential oracle (tests cross-check the -G_j closed form).
Matrix multiplex_oracle(const std::vector<decomp::SignedPermTerm>& terms);

// First-order (Lie) or second-order (Strang) product-formula program for
// e^{-i gamma sum G_j t}: eta*r (or 2*eta*r) query steps of equal fraction,
// identity drives, oracle j at the appropriate cyclic position, and ledger
// phase e^{i pi cost/2}.  Throws when the per-step fraction exceeds 1.
FractionalQueryProgram trotter_program(const std::vector<decomp::SignedPermTerm>& terms,
                                       double gamma, double t, int r, int order = 1);

// Equal-cost split into n_chunks pieces; query steps are divided across
// boundaries exactly (fractional queries compose), drives stay with their
// original positions.
std::vector<FractionalQueryProgram> split_program(const FractionalQueryProgram& p, int n_chunks);

// Splits one query of each chunk until all chunks have the same step count.
void pad_to_uniform(std::vector<FractionalQueryProgram>& chunks);

// Composition basis of the weight <= k ancilla subspace: tuples
// (l_1,...,l_h) with h <= k and sum l_i <= m-h, in lexicographic order by
// (h, l_1, ..., l_h).  Index 0 is the empty composition (the 0^m string).
struct EncodedAncilla {
  int m = 0;
  int k = 0;
  std::vector<std::vector<int>> comps;
  std::vector<int> parent;       // index of the composition with the last gap dropped
  std::vector<int> last_position;  // 0-based gadget position of the final query, -1 for root
  Vector zeta;                   // truncated, unnormalized prep amplitudes
  double deficit2 = 0.0;         // 1 - ||zeta||^2

  std::size_t size() const { return comps.size(); }
};

// Enumerates compositions and evaluates the prep amplitudes for possibly
// unequal fractions; amplitudes are products of per-position factors
// computed in the log domain, so large m stays stable.
EncodedAncilla make_encoded_ancilla(const std::vector<double>& alphas, int k);

// Per-composition amplitudes of a product state with per-position
// components (f0[p], f1[p]) on bit 0/1, restricted to weight <= k.
Vector encode_product_state(const EncodedAncilla& enc, const std::vector<Complex>& f0,
                            const std::vector<Complex>& f1);

}  // namespace fqsim::fq
