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

#include "fqsim/linalg.hpp"

namespace fqsim::demos {

// Tridiagonal chain <i|H'|i+1> = sqrt((N-i)(i+1))/N on {0..N}; its endpoint
// transition amplitude is |sin(t/N)|^N.
Matrix parity_chain(int n);

// |<N| e^{-iH't} |0>|.
double parity_overlap(int n, double t);

// The symmetric-subspace generator sum_j X^(j) on n qubits (dense 2^n),
// used to cross-check the chain against its weight-basis origin.
Matrix transverse_field_sum(int n);

// Hamiltonian on vertices (i, j), i in {0..N}, j in {0,1}: edges
// (i,j) <-> (i-1, j xor x_i) with weight sqrt((N-i+1) i)/N.  Two disjoint
// paths; the component of |0,0> ends at |N, parity(x)>.
Matrix parity_oracle_hamiltonian(const std::vector<int>& x);

struct ParityDecode {
  int parity = 0;             // decoded bit
  bool decoded = true;        // false when the threshold test refuses to answer
  double success_amplitude = 0.0;  // |<N, parity| e^{-iHt} |0,0>|
  double wrong_sector = 0.0;       // |<N, 1-parity| ... | (zero for exact evolution)
};

// Evolves |0,0> under the parity-oracle Hamiltonian and reads the second
// register at first-register value N.  A perturbation of norm eps_sim is
// injected adversarially into the wrong sector when nonzero; decoding is
// guaranteed only while |sin(t/N)|^N exceeds eps_sim by the safety factor.
ParityDecode parity_decode(const std::vector<int>& x, double t, double eps_sim = 0.0,
                           double safety = 10.0);

// Largest N with |sin(t/N)|^N > safety * eps at the fixed demo time.
int epsilon_threshold(double eps, double t = 1.0, double safety = 10.0);

// Bessel J_n(t) by the alternating power series, term count chosen by the
// remainder bound; independent of any library special-function code.
double bessel_j(int n, double t);

// The four conjugated query terms and the driving Hamiltonian of the
// two-path walk on sites i in [-W, W], j,k in {0,1}.  `a` is 1..4.
Matrix walk_query_term(int a, const std::vector<int>& x, int w);
Matrix walk_driving_hamiltonian(int w);
// H = -T1 - T2 + T3 + T4 + H_D; equals half the adjacency of two disjoint
// paths after the self-loops cancel.
Matrix bessel_walk_hamiltonian(const std::vector<int>& x, int w);

// |<N, parity(x), 1| e^{-iHt} |0, 0, 1>| at truncation half-width W;
// matches |J_{2N}(t)| once W is comfortably past N^2.
double bessel_overlap(int n, double t, int w);

// Basis index of |i, j, k> in the truncated walk space.
std::int64_t walk_index(int i, int j, int k, int w);

}  // namespace fqsim::demos
