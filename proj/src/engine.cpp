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

#include "fqsim/engine.hpp"

#include <cmath>

#include "fqsim/errors.hpp"

namespace fqsim::engine {

namespace {

using MapMatrix = Eigen::Map<Matrix>;  // state viewed as (system) x (label), column-major

struct PlaneRotationData {
  Vector u1, u2;
  Complex g{1.0, 0.0};
  double nw = 0.0;
  bool rank_one = false;  // b == g a: pure phase on the a-axis
};

PlaneRotationData plane_rotation(const Vector& a, const Vector& b) {
  PlaneRotationData d;
  d.u1 = a;
  d.g = a.dot(b);  // Eigen's dot conjugates the left argument
  Vector w = b - d.g * a;
  d.nw = w.norm();
  if (d.nw < 1e-15) {
    d.rank_one = true;
    d.u2 = Vector::Zero(a.size());
    return d;
  }
  d.u2 = w / d.nw;
  return d;
}

}  // namespace

std::int64_t RegisterLayout::total() const {
  std::int64_t t = 1;
  for (std::int64_t d : dims) t *= d;
  return t;
}

SignedPerm SignedPerm::identity(std::int64_t dim) {
  SignedPerm p;
  p.col.resize(static_cast<std::size_t>(dim));
  p.ph.assign(static_cast<std::size_t>(dim), Complex(1.0, 0.0));
  for (std::int64_t i = 0; i < dim; ++i) p.col[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
  return p;
}

SignedPerm SignedPerm::from_term_negated(const decomp::SignedPermTerm& t) {
  SignedPerm p;
  p.col.resize(static_cast<std::size_t>(t.dim));
  p.ph.resize(static_cast<std::size_t>(t.dim));
  for (std::int64_t r = 0; r < t.dim; ++r) {
    p.col[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(t.column[static_cast<std::size_t>(r)]);
    p.ph[static_cast<std::size_t>(r)] = -t.phase[static_cast<std::size_t>(r)];
  }
  return p;
}

SignedPerm SignedPerm::then(const SignedPerm& first) const {
  // Matrix product (*this) * first: `first` acts first.
  SignedPerm out;
  const std::size_t n = col.size();
  out.col.resize(n);
  out.ph.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::int32_t mid = col[r];
    out.col[r] = first.col[static_cast<std::size_t>(mid)];
    out.ph[r] = ph[r] * first.ph[static_cast<std::size_t>(mid)];
  }
  return out;
}

std::shared_ptr<const BodyData> make_body(const fq::SegmentSpec& spec,
                                          std::shared_ptr<const fq::EncodedAncilla> enc, int k) {
  auto body = std::make_shared<BodyData>();
  body->k = k;
  body->system_dim = spec.chunk.system_dim;
  body->enc = enc;
  const int m = spec.m();
  body->pos_oracle.resize(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) {
    body->pos_oracle[static_cast<std::size_t>(p)] = spec.chunk.steps[static_cast<std::size_t>(p)].oracle;
  }
  body->oracle_dense = spec.chunk.oracles;

  const bool fast = spec.chunk.identity_drives() && !spec.chunk.perm_oracles.empty();
  if (fast) {
    std::vector<SignedPerm> oracle_perm;
    oracle_perm.reserve(spec.chunk.perm_oracles.size());
    for (const auto& t : spec.chunk.perm_oracles) oracle_perm.push_back(SignedPerm::from_term_negated(t));
    body->branch_perm.resize(enc->size());
    body->branch_perm[0] = SignedPerm::identity(spec.chunk.system_dim);
    for (std::size_t b = 1; b < enc->size(); ++b) {
      const int pos = enc->last_position[b];
      const SignedPerm& q = oracle_perm[static_cast<std::size_t>(body->pos_oracle[static_cast<std::size_t>(pos)])];
      // The new query has the largest position, so it acts last.
      body->branch_perm[b] = q.then(body->branch_perm[static_cast<std::size_t>(enc->parent[b])]);
    }
  } else if (!spec.chunk.identity_drives()) {
    const std::int64_t s = spec.chunk.system_dim;
    body->drive_prefix.reserve(static_cast<std::size_t>(m) + 2);
    body->drive_prefix.push_back(Matrix::Identity(s, s));  // P_{-1}
    for (int j = 0; j <= m; ++j) {
      body->drive_prefix.push_back(spec.chunk.drive(static_cast<std::size_t>(j)) * body->drive_prefix.back());
    }
  }
  return body;
}

namespace {

Matrix branch_dense_op(const BodyData& body, std::size_t branch) {
  // General path: P_m P_{p_h}^dag O_{p_h} ... O_{p_1} P_{p_1}, where the
  // 0-based query positions are p_i = sum_{j<=i} gaps + (i-1).
  const auto& comp = body.enc->comps[branch];
  const std::int64_t s = body.system_dim;
  const int m = static_cast<int>(body.pos_oracle.size());
  auto prefix = [&](int j) -> Matrix {
    if (body.drive_prefix.empty()) return Matrix::Identity(s, s);
    return body.drive_prefix[static_cast<std::size_t>(j) + 1];  // stored from P_{-1}
  };
  std::vector<int> positions;
  int acc = 0;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    acc += comp[i];
    positions.push_back(acc + static_cast<int>(i));
  }
  if (positions.empty()) return prefix(m);
  Matrix op = prefix(positions.front());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    op = body.oracle_dense[static_cast<std::size_t>(body.pos_oracle[static_cast<std::size_t>(positions[i])])] * op;
    const int upto = (i + 1 < positions.size()) ? positions[i + 1] : m;
    op = prefix(upto) * prefix(positions[i]).adjoint() * op;
  }
  return op;
}

void apply_factor_gate(Vector& v, const RegisterLayout& lay, int factor, const Matrix& u,
                       bool adjoint) {
  const std::int64_t df = lay.dims[static_cast<std::size_t>(factor)];
  std::int64_t inner = 1;
  for (std::size_t j = static_cast<std::size_t>(factor) + 1; j < lay.dims.size(); ++j) inner *= lay.dims[j];
  const std::int64_t outer = lay.total() / (df * inner);
  const Matrix g = adjoint ? Matrix(u.adjoint()) : u;
  Vector scratch(df);
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t i = 0; i < inner; ++i) {
      const std::int64_t base = o * df * inner + i;
      for (std::int64_t x = 0; x < df; ++x) scratch(x) = v(base + x * inner);
      Vector res = g * scratch;
      for (std::int64_t x = 0; x < df; ++x) v(base + x * inner) = res(x);
    }
  }
}

void apply_qubit_gate(Vector& v, const RegisterLayout& lay, int factor, int qubit, const Matrix& u,
                      bool adjoint) {
  const std::int64_t df = lay.dims[static_cast<std::size_t>(factor)];
  int width = 0;
  while ((std::int64_t{1} << width) < df) ++width;
  const std::int64_t bit = std::int64_t{1} << (width - 1 - qubit);
  std::int64_t inner = 1;
  for (std::size_t j = static_cast<std::size_t>(factor) + 1; j < lay.dims.size(); ++j) inner *= lay.dims[j];
  const std::int64_t outer = lay.total() / (df * inner);
  const Matrix g = adjoint ? Matrix(u.adjoint()) : u;
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t x = 0; x < df; ++x) {
      if (x & bit) continue;
      for (std::int64_t i = 0; i < inner; ++i) {
        const std::int64_t i0 = (o * df + x) * inner + i;
        const std::int64_t i1 = (o * df + (x | bit)) * inner + i;
        const Complex a = v(i0);
        const Complex b = v(i1);
        v(i0) = g(0, 0) * a + g(0, 1) * b;
        v(i1) = g(1, 0) * a + g(1, 1) * b;
      }
    }
  }
}

void apply_controlled_sys(Vector& v, const RegisterLayout& lay, int factor, int qubit,
                          const Matrix& u, bool adjoint) {
  const std::int64_t sys = lay.system_dim();
  const std::int64_t labels = lay.label_dim();
  const std::int64_t df = lay.dims[static_cast<std::size_t>(factor)];
  int width = 0;
  while ((std::int64_t{1} << width) < df) ++width;
  const std::int64_t bit = std::int64_t{1} << (width - 1 - qubit);
  std::int64_t inner_label = 1;
  for (std::size_t j = static_cast<std::size_t>(factor) + 1; j + 1 < lay.dims.size(); ++j) {
    inner_label *= lay.dims[j];
  }
  const Matrix g = adjoint ? Matrix(u.adjoint()) : u;
  MapMatrix view(v.data(), sys, labels);
  for (std::int64_t lab = 0; lab < labels; ++lab) {
    const std::int64_t comp = (lab / inner_label) % df;
    if (comp & bit) view.col(lab) = g * view.col(lab);
  }
}

void apply_plane_rotation(Vector& v, const RegisterLayout& lay, int factor, const Vector& a,
                          const Vector& b, bool adjoint) {
  const PlaneRotationData d = plane_rotation(a, b);
  const std::int64_t df = lay.dims[static_cast<std::size_t>(factor)];
  std::int64_t inner = 1;
  for (std::size_t j = static_cast<std::size_t>(factor) + 1; j < lay.dims.size(); ++j) inner *= lay.dims[j];
  const std::int64_t outer = lay.total() / (df * inner);
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t i = 0; i < inner; ++i) {
      const std::int64_t base = o * df * inner + i;
      Complex c1{0, 0}, c2{0, 0};
      for (std::int64_t x = 0; x < df; ++x) {
        const Complex val = v(base + x * inner);
        c1 += std::conj(d.u1(x)) * val;
        if (!d.rank_one) c2 += std::conj(d.u2(x)) * val;
      }
      Complex k1, k2;
      if (d.rank_one) {
        k1 = ((adjoint ? std::conj(d.g) : d.g) - 1.0) * c1;
        k2 = Complex(0, 0);
      } else if (!adjoint) {
        k1 = (d.g - 1.0) * c1 - d.nw * c2;
        k2 = d.nw * c1 + (std::conj(d.g) - 1.0) * c2;
      } else {
        k1 = (std::conj(d.g) - 1.0) * c1 + d.nw * c2;
        k2 = -d.nw * c1 + (d.g - 1.0) * c2;
      }
      for (std::int64_t x = 0; x < df; ++x) {
        v(base + x * inner) += d.u1(x) * k1 + (d.rank_one ? Complex(0, 0) : d.u2(x) * k2);
      }
    }
  }
}

void apply_reflect_label(Vector& v, const RegisterLayout& lay, const Vector& w) {
  const std::int64_t sys = lay.system_dim();
  const std::int64_t labels = lay.label_dim();
  MapMatrix view(v.data(), sys, labels);
  // 2|w><w| - I on the label part, identity on the system.
  Vector overlap = view * w.conjugate();
  view = 2.0 * overlap * w.transpose() - view;
}

void apply_body(Vector& v, const RegisterLayout& lay, const BodyData& body, bool adjoint) {
  const std::int64_t sys = lay.system_dim();
  const std::int64_t n_comp = static_cast<std::int64_t>(body.enc->size());
  const std::int64_t fudge = lay.dims.front();
  MapMatrix view(v.data(), sys, lay.label_dim());
  if (!body.branch_perm.empty()) {
    Vector scratch(sys);
    for (std::int64_t b = 0; b < n_comp; ++b) {
      const SignedPerm& p = body.branch_perm[static_cast<std::size_t>(b)];
      for (std::int64_t f = 0; f < fudge; ++f) {
        auto col = view.col(f * n_comp + b);
        if (!adjoint) {
          for (std::int64_t r = 0; r < sys; ++r) {
            scratch(r) = p.ph[static_cast<std::size_t>(r)] * col(p.col[static_cast<std::size_t>(r)]);
          }
        } else {
          for (std::int64_t r = 0; r < sys; ++r) {
            scratch(p.col[static_cast<std::size_t>(r)]) = std::conj(p.ph[static_cast<std::size_t>(r)]) * col(r);
          }
        }
        col = scratch;
      }
    }
    return;
  }
  for (std::int64_t b = 0; b < n_comp; ++b) {
    Matrix op = branch_dense_op(body, static_cast<std::size_t>(b));
    if (adjoint) op = op.adjoint().eval();
    for (std::int64_t f = 0; f < fudge; ++f) {
      view.col(f * n_comp + b) = op * view.col(f * n_comp + b);
    }
  }
}

}  // namespace

State apply(const Circuit& c, State state, Meter* meter) {
  if (state.amps.size() != c.layout.total()) {
    throw ValidationError("apply: state dimension does not match the circuit layout");
  }
  const double in_norm = state.amps.norm();
  for (const Op& op : c.ops) {
    switch (op.kind) {
      case Op::Kind::Scalar:
        state.amps *= (op.adjoint ? std::conj(op.scalar) : op.scalar);
        break;
      case Op::Kind::FactorGate:
        apply_factor_gate(state.amps, c.layout, op.factor, op.mat, op.adjoint);
        break;
      case Op::Kind::QubitGate:
        apply_qubit_gate(state.amps, c.layout, op.factor, op.qubit, op.mat, op.adjoint);
        break;
      case Op::Kind::ControlledSysGate:
        apply_controlled_sys(state.amps, c.layout, op.factor, op.qubit, op.mat, op.adjoint);
        break;
      case Op::Kind::PlaneRotation:
        if (!op.adjoint) {
          apply_plane_rotation(state.amps, c.layout, op.factor, op.vec_a, op.vec_b, false);
        } else {
          apply_plane_rotation(state.amps, c.layout, op.factor, op.vec_a, op.vec_b, true);
        }
        break;
      case Op::Kind::ReflectLabel:
        apply_reflect_label(state.amps, c.layout, op.vec_a);
        break;
      case Op::Kind::EncodedBody:
        apply_body(state.amps, c.layout, *op.body, op.adjoint);
        break;
    }
  }
  if (std::abs(state.amps.norm() - in_norm) > 1e-9) {
    throw InvariantError("apply: norm drift beyond tolerance");
  }
  if (meter != nullptr) meter->count.fetch_add(c.declared_queries);
  state.layout = c.layout;
  return state;
}

Matrix materialize(const Circuit& c, Meter* meter) {
  const std::int64_t dim = c.layout.total();
  if (static_cast<std::size_t>(dim) > tol::dense_limit()) {
    throw ValidationError("materialize: dimension exceeds the dense limit");
  }
  Matrix out(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    State s;
    s.layout = c.layout;
    s.amps = Vector::Zero(dim);
    s.amps(j) = 1.0;
    out.col(j) = apply(c, std::move(s), meter).amps;
  }
  return out;
}

State encoded_prepare(const fq::SegmentSpec& spec, int k) {
  std::vector<double> alphas;
  for (const auto& s : spec.chunk.steps) alphas.push_back(s.alpha);
  fq::EncodedAncilla enc = fq::make_encoded_ancilla(alphas, k);
  State st;
  st.layout.dims = {static_cast<std::int64_t>(enc.size())};
  const double norm = enc.zeta.norm();
  st.amps = enc.zeta / norm;
  st.norm_deficit2 = enc.deficit2;
  return st;
}

namespace {

struct SegmentVectors {
  std::shared_ptr<fq::EncodedAncilla> enc;
  Vector zeta_norm;   // |zeta~>
  Vector phi_joint;   // normalized (B^dag|0>) (x) |phi~>
  Vector label_row;   // <0^{m+1}|C restricted to the composition basis
  Vector zero_label;  // |0_F, e_0>
};

SegmentVectors segment_vectors(const fq::SegmentSpec& spec, int k) {
  SegmentVectors sv;
  std::vector<double> alphas;
  for (const auto& s : spec.chunk.steps) alphas.push_back(s.alpha);
  sv.enc = std::make_shared<fq::EncodedAncilla>(fq::make_encoded_ancilla(alphas, k));
  const auto n = static_cast<Eigen::Index>(sv.enc->size());

  sv.zeta_norm = sv.enc->zeta / sv.enc->zeta.norm();

  // Per-position components of (R_a P_a)^dag |0> and of the closing row
  // <0| R_a P_a; they are elementwise conjugates.
  const int m = spec.m();
  std::vector<Complex> row0(static_cast<std::size_t>(m)), row1(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) {
    const fq::GadgetParams g = fq::gadget_params(alphas[static_cast<std::size_t>(p)]);
    const double norm = 1.0 / std::sqrt(g.c + g.s);
    const Complex w = std::polar(1.0, -M_PI * g.alpha);
    row0[static_cast<std::size_t>(p)] = w * norm * std::sqrt(g.c);
    row1[static_cast<std::size_t>(p)] = w * Complex(0, 1) * norm * std::sqrt(g.s);
  }
  Vector gamma_row = fq::encode_product_state(*sv.enc, row0, row1);

  const Matrix b = fq::fudge_gate(spec.p);
  // B row 0 equals (B^dag|0>)^T for this real rotation.
  sv.label_row = Vector(2 * n);
  sv.label_row.head(n) = b(0, 0) * gamma_row;
  sv.label_row.tail(n) = b(0, 1) * gamma_row;

  Vector phi = gamma_row.conjugate();
  sv.phi_joint = Vector(2 * n);
  sv.phi_joint.head(n) = b(0, 0) * phi;
  sv.phi_joint.tail(n) = b(0, 1) * phi;
  sv.phi_joint /= sv.phi_joint.norm();

  sv.zero_label = Vector::Zero(2 * n);
  sv.zero_label(0) = 1.0;
  return sv;
}

}  // namespace

Circuit encoded_reflect(const fq::SegmentSpec& spec, int k) {
  SegmentVectors sv = segment_vectors(spec, k);
  const auto n = static_cast<Eigen::Index>(sv.enc->size());
  Circuit c;
  c.layout.dims = {2, n, spec.chunk.system_dim};
  Vector joint = Vector::Zero(2 * n);
  joint.head(n) = sv.zeta_norm;
  Op op;
  op.kind = Op::Kind::ReflectLabel;
  op.vec_a = joint;
  c.ops.push_back(std::move(op));
  return c;
}

EncodedSegment build_encoded_segment(const fq::SegmentSpec& spec, int k) {
  if (k < 0 || k > tol::kMaxTruncationOrder) {
    throw ValidationError("encoded segment: k outside the configured range");
  }
  if (spec.m() > tol::kMaxGadgetsPerSegment) {
    throw ValidationError("encoded segment: gadget count exceeds the configured limit");
  }
  SegmentVectors sv = segment_vectors(spec, k);

  EncodedSegment seg;
  seg.spec = spec;
  seg.enc = sv.enc;
  seg.k = k;
  seg.label_row = sv.label_row;

  const auto n = static_cast<Eigen::Index>(sv.enc->size());
  Circuit c;
  c.layout.dims = {2, n, spec.chunk.system_dim};
  c.layout.index_dim = static_cast<std::int64_t>(spec.chunk.oracles.size());

  auto enc_const = std::shared_ptr<const fq::EncodedAncilla>(sv.enc);
  auto body = make_body(spec, enc_const, k);

  Op prep;
  prep.kind = Op::Kind::PlaneRotation;
  prep.factor = 1;
  prep.vec_a = Vector::Zero(n);
  prep.vec_a(0) = 1.0;
  prep.vec_b = sv.zeta_norm;

  Op body_op;
  body_op.kind = Op::Kind::EncodedBody;
  body_op.body = body;

  Op reflect_phi;
  reflect_phi.kind = Op::Kind::ReflectLabel;
  reflect_phi.vec_a = sv.phi_joint;

  Op reflect_zero;
  reflect_zero.kind = Op::Kind::ReflectLabel;
  reflect_zero.vec_a = sv.zero_label;

  Op minus;
  minus.kind = Op::Kind::Scalar;
  minus.scalar = Complex(-1.0, 0.0);

  auto adj = [](Op op) {
    op.adjoint = true;
    return op;
  };

  // A = -(C absorbed) M R M^dag R_phi M with M = Body Prep; application order
  // is right to left.
  c.ops.push_back(prep);
  c.ops.push_back(body_op);
  c.ops.push_back(reflect_phi);
  c.ops.push_back(adj(body_op));
  c.ops.push_back(adj(prep));
  c.ops.push_back(reflect_zero);
  c.ops.push_back(prep);
  c.ops.push_back(body_op);
  c.ops.push_back(minus);
  c.declared_queries = 3 * static_cast<std::uint64_t>(std::max(k, 0));
  seg.amplified = std::move(c);

  Circuit one;
  one.layout = seg.amplified.layout;
  one.ops.push_back(prep);
  one.ops.push_back(body_op);
  one.declared_queries = static_cast<std::uint64_t>(std::max(k, 0));
  seg.single = std::move(one);
  return seg;
}

namespace {

Matrix block_against_row(const Circuit& circuit, const Vector& row, std::int64_t sys,
                         std::int64_t label, Meter* meter) {
  Matrix block(sys, sys);
  for (std::int64_t j = 0; j < sys; ++j) {
    State st;
    st.layout = circuit.layout;
    st.amps = Vector::Zero(label * sys);
    st.amps(j) = 1.0;  // zero label, system basis j
    st = apply(circuit, std::move(st), nullptr);
    MapMatrix view(st.amps.data(), sys, label);
    block.col(j) = view * row;
  }
  // Column extraction simulates one protocol execution; charge it once.
  if (meter != nullptr) meter->count.fetch_add(circuit.declared_queries);
  return block;
}

}  // namespace

Matrix segment_block(const EncodedSegment& seg, Meter* meter) {
  return block_against_row(seg.amplified, seg.label_row, seg.spec.chunk.system_dim,
                           2 * static_cast<std::int64_t>(seg.enc->size()), meter);
}

Matrix segment_block_single(const EncodedSegment& seg, Meter* meter) {
  return block_against_row(seg.single, seg.label_row, seg.spec.chunk.system_dim,
                           2 * static_cast<std::int64_t>(seg.enc->size()), meter);
}

namespace {

Vector binary_state_from_components(const std::vector<Complex>& f0, const std::vector<Complex>& f1) {
  const int m = static_cast<int>(f0.size());
  const std::int64_t dim = std::int64_t{1} << m;
  Vector out(dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    Complex amp{1.0, 0.0};
    for (int p = 0; p < m; ++p) {
      const bool bit = (x >> (m - 1 - p)) & 1;
      amp *= bit ? f1[static_cast<std::size_t>(p)] : f0[static_cast<std::size_t>(p)];
    }
    out(x) = amp;
  }
  return out;
}

int popcount64(std::int64_t x) {
  int c = 0;
  while (x) {
    c += static_cast<int>(x & 1);
    x >>= 1;
  }
  return c;
}

Circuit full_segment_common(const fq::SegmentSpec& spec, bool exact_prep, int k, bool rprime) {
  const int m = spec.m();
  const std::int64_t anc = std::int64_t{1} << m;
  Circuit c;
  c.layout.dims = {2, anc, spec.chunk.system_dim};

  if (exact_prep) {
    for (int i = 0; i < m; ++i) {
      Op op;
      op.kind = Op::Kind::QubitGate;
      op.factor = 1;
      op.qubit = i;
      op.mat = fq::gate_r(spec.chunk.steps[static_cast<std::size_t>(i)].alpha);
      c.ops.push_back(std::move(op));
    }
  } else {
    Vector zeta = binary_prep_state(spec);
    Vector zeta_k = zeta;
    for (std::int64_t x = 0; x < anc; ++x) {
      if (popcount64(x) > k) zeta_k(x) = 0.0;
    }
    zeta_k /= zeta_k.norm();
    Op prep;
    prep.kind = Op::Kind::PlaneRotation;
    prep.factor = 1;
    prep.vec_a = Vector::Zero(anc);
    prep.vec_a(0) = 1.0;
    prep.vec_b = zeta_k;
    c.ops.push_back(std::move(prep));
    if (rprime) {
      Op fix;
      fix.kind = Op::Kind::PlaneRotation;
      fix.factor = 1;
      fix.vec_a = zeta_k;
      fix.vec_b = zeta;
      c.ops.push_back(std::move(fix));
    }
  }

  Op d0;
  d0.kind = Op::Kind::FactorGate;
  d0.factor = 2;
  d0.mat = spec.chunk.drive(0);
  c.ops.push_back(std::move(d0));
  for (int i = 0; i < m; ++i) {
    const fq::QueryStep& s = spec.chunk.steps[static_cast<std::size_t>(i)];
    Op q;
    q.kind = Op::Kind::ControlledSysGate;
    q.factor = 1;
    q.qubit = i;
    q.mat = spec.chunk.oracles[static_cast<std::size_t>(s.oracle)];
    c.ops.push_back(std::move(q));
    Op d;
    d.kind = Op::Kind::FactorGate;
    d.factor = 2;
    d.mat = spec.chunk.drive(static_cast<std::size_t>(i) + 1);
    c.ops.push_back(std::move(d));
  }
  for (int i = 0; i < m; ++i) {
    const double a = spec.chunk.steps[static_cast<std::size_t>(i)].alpha;
    Op op;
    op.kind = Op::Kind::QubitGate;
    op.factor = 1;
    op.qubit = i;
    op.mat = fq::gate_r(a) * fq::gate_p(a);
    c.ops.push_back(std::move(op));
  }
  Op fudge;
  fudge.kind = Op::Kind::FactorGate;
  fudge.factor = 0;
  fudge.mat = fq::fudge_gate(spec.p);
  c.ops.push_back(std::move(fudge));
  c.declared_queries = static_cast<std::uint64_t>(exact_prep ? m : k);
  return c;
}

}  // namespace

Circuit full_segment_circuit(const fq::SegmentSpec& spec) {
  return full_segment_common(spec, true, 0, false);
}

Circuit full_segment_circuit_truncated(const fq::SegmentSpec& spec, int k) {
  return full_segment_common(spec, false, k, false);
}

Circuit full_segment_circuit_rprime(const fq::SegmentSpec& spec, int k) {
  return full_segment_common(spec, false, k, true);
}

Vector binary_prep_state(const fq::SegmentSpec& spec) {
  const int m = spec.m();
  std::vector<Complex> f0(static_cast<std::size_t>(m)), f1(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) {
    const fq::GadgetParams g = fq::gadget_params(spec.chunk.steps[static_cast<std::size_t>(p)].alpha);
    const double norm = 1.0 / std::sqrt(g.c + g.s);
    f0[static_cast<std::size_t>(p)] = norm * std::sqrt(g.c);
    f1[static_cast<std::size_t>(p)] = norm * std::sqrt(g.s);
  }
  return binary_state_from_components(f0, f1);
}

}  // namespace fqsim::engine
