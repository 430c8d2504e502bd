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
#include <vector>

#include "fqsim/fracquery.hpp"
#include "fqsim/linalg.hpp"

namespace fqsim::engine {

// Kronecker factor dimensions, system register last and fastest-varying.
// The oracle-index register of the multiplexed picture never appears as a
// state factor: its evolution is a deterministic basis permutation, so the
// per-slot oracle is resolved at circuit-build time and only its size is
// recorded here.
struct RegisterLayout {
  std::vector<std::int64_t> dims;
  std::int64_t index_dim = 1;  // eta, bookkeeping only

  std::int64_t total() const;
  std::int64_t system_dim() const { return dims.back(); }
  std::int64_t label_dim() const { return total() / system_dim(); }
};

struct State {
  RegisterLayout layout;
  Vector amps;
  double norm_deficit2 = 0.0;  // nonzero only for explicitly subnormalized states
};

// One-counter query meter; shared across concurrent executions.
struct Meter {
  std::atomic<std::uint64_t> count{0};
};

// Signed permutation on the system register: column and unit phase per row.
struct SignedPerm {
  std::vector<std::int32_t> col;
  std::vector<Complex> ph;

  static SignedPerm identity(std::int64_t dim);
  static SignedPerm from_term_negated(const decomp::SignedPermTerm& t);  // -G
  SignedPerm then(const SignedPerm& first) const;  // this * first as matrices
};

// Composition-controlled query block of the rearranged k-slot circuit: on
// ancilla branch l the system register sees the branch's own interleaving
// of drives and oracles.  Charges k per application regardless of how many
// slots are idle.
struct BodyData {
  int k = 0;
  std::int64_t system_dim = 1;
  std::shared_ptr<const fq::EncodedAncilla> enc;
  std::vector<int> pos_oracle;          // 0-based gadget position -> oracle id
  std::vector<Matrix> oracle_dense;     // system operators (general path)
  std::vector<SignedPerm> branch_perm;  // fast path: net op per branch
  std::vector<Matrix> drive_prefix;     // P_j = D_j ... D_0; empty = identity drives
};

std::shared_ptr<const BodyData> make_body(const fq::SegmentSpec& spec,
                                          std::shared_ptr<const fq::EncodedAncilla> enc, int k);

struct Op {
  enum class Kind {
    Scalar,            // multiply by a unit scalar
    FactorGate,        // small dense unitary on one factor
    QubitGate,         // 2x2 on one bit of a power-of-two factor
    ControlledSysGate, // dense on the system, controlled on one ancilla bit
    PlaneRotation,     // unitary rotating unit vector a to b within a factor
    ReflectLabel,      // 2|w><w| - I on the full label part
    EncodedBody,       // composition-controlled queries
  };
  Kind kind = Kind::Scalar;
  bool adjoint = false;
  Complex scalar{1.0, 0.0};
  int factor = 0;
  int qubit = 0;  // bit index, 0 = most significant
  Matrix mat;
  Vector vec_a, vec_b;
  std::shared_ptr<const BodyData> body;
};

struct Circuit {
  RegisterLayout layout;
  std::vector<Op> ops;
  std::uint64_t declared_queries = 0;
};

// Applies the circuit; preserves norm to 1e-12 and charges the circuit's
// declared query count to the meter (when given).
State apply(const Circuit& c, State state, Meter* meter = nullptr);

// Column-by-column application.  Throws when the total dimension exceeds
// the dense limit.
Matrix materialize(const Circuit& c, Meter* meter = nullptr);

// |zeta~>: the normalized weight <= k truncation of the gadget prep state.
State encoded_prepare(const fq::SegmentSpec& spec, int k);

// 2|0_F zeta~><0_F zeta~| - I on fudge (x) ancilla, as a one-op circuit over
// the layout [2, |L|, system].
Circuit encoded_reflect(const fq::SegmentSpec& spec, int k);

// One segment compiled against the encoded ancilla, amplified by a single
// oblivious-amplitude-amplification step.  The closing per-qubit gates and
// the fudge rotation are absorbed into the reflections (their only
// appearances), except for the final occurrence which survives as the
// zero-label readout row `label_row`.
struct EncodedSegment {
  fq::SegmentSpec spec;
  std::shared_ptr<const fq::EncodedAncilla> enc;
  int k = 0;
  Circuit amplified;  // one amplification step; declared queries: 3k
  Circuit single;     // one segment application; declared queries: k
  Vector label_row;   // <0^{m+1}| C over the (fudge, composition) basis
};

EncodedSegment build_encoded_segment(const fq::SegmentSpec& spec, int k);

// Zero-label block of the amplified segment on the system register,
// approximately e^{i theta} V.
Matrix segment_block(const EncodedSegment& seg, Meter* meter = nullptr);

// Zero-label block of one unamplified application, approximately
// (1/2) e^{i theta} V.
Matrix segment_block_single(const EncodedSegment& seg, Meter* meter = nullptr);

// Full-binary-basis segment circuits on [2, 2^m, system] for dense
// cross-checks: exact prep (x)R_a, the truncated prep R~ (any unitary whose
// first column is zeta~, realized as a plane rotation), and the appendix's
// R' = E R~ whose first column is restored to zeta.
Circuit full_segment_circuit(const fq::SegmentSpec& spec);
Circuit full_segment_circuit_truncated(const fq::SegmentSpec& spec, int k);
Circuit full_segment_circuit_rprime(const fq::SegmentSpec& spec, int k);

// Binary-basis prep state (x) R_a |0^m>, for tests of the encoding bijection.
Vector binary_prep_state(const fq::SegmentSpec& spec);

}  // namespace fqsim::engine
