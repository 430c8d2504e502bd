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

#include "fqsim/fracquery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fqsim/errors.hpp"

namespace fqsim::fq {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kCostSlack = 1e-12;  // floating slack on the 1/5 budget
}  // namespace

GadgetParams gadget_params(double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw ValidationError("gadget: alpha must lie in [0, 1]");
  GadgetParams g;
  g.alpha = alpha;
  g.c = std::cos(kPi * alpha / 2.0);
  g.s = std::sin(kPi * alpha / 2.0);
  g.q = 1.0 / (1.0 + std::sin(kPi * alpha));
  return g;
}

Matrix gate_r(double alpha) {
  const GadgetParams g = gadget_params(alpha);
  const double norm = 1.0 / std::sqrt(g.c + g.s);
  Matrix r(2, 2);
  r << norm * std::sqrt(g.c), norm * std::sqrt(g.s), norm * std::sqrt(g.s),
      -norm * std::sqrt(g.c);
  return r;
}

Matrix gate_p(double alpha) {
  const Complex w = std::polar(1.0, -kPi * alpha);
  Matrix p(2, 2);
  p << w, Complex(0, 0), Complex(0, 0), w * Complex(0, 1);
  return p;
}

Matrix gadget_circuit(const Matrix& q, double alpha) {
  if (!linalg::is_involution(q)) throw ValidationError("gadget_circuit: Q^2 != I to 1e-12");
  const Eigen::Index n = q.rows();
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix idn = Matrix::Identity(n, n);
  Matrix cq = Matrix::Zero(2 * n, 2 * n);
  cq.topLeftCorner(n, n) = idn;
  cq.bottomRightCorner(n, n) = q;
  const Matrix r = linalg::kron(gate_r(alpha), idn);
  const Matrix p = linalg::kron(gate_p(alpha), idn);
  return r * p * cq * r;
}

double FractionalQueryProgram::cost() const {
  double total = 0.0;
  for (const QueryStep& s : steps) total += s.alpha;
  return total;
}

Matrix FractionalQueryProgram::drive(std::size_t i) const {
  if (drives.empty()) return Matrix::Identity(system_dim, system_dim);
  return drives[i];
}

void FractionalQueryProgram::validate() const {
  if (!drives.empty() && drives.size() != steps.size() + 1) {
    throw ValidationError("program: need one drive more than query steps");
  }
  for (const QueryStep& s : steps) {
    if (s.alpha <= 0.0 || s.alpha > 1.0) {
      throw ValidationError("program: fractions must lie in (0, 1]");
    }
    if (s.oracle < 0 || s.oracle >= static_cast<int>(oracles.size())) {
      throw ValidationError("program: oracle index out of range");
    }
  }
  for (const Matrix& u : drives) {
    if (u.rows() != system_dim || !linalg::is_unitary(u, tol::compositional)) {
      throw ValidationError("program: drives must be unitary on the system register");
    }
  }
}

Matrix program_product(const FractionalQueryProgram& p) {
  Matrix out = p.drive(0);
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    out = linalg::fractional_power(p.oracles[static_cast<std::size_t>(p.steps[i].oracle)],
                                   p.steps[i].alpha) *
          out;
    out = p.drive(i + 1) * out;
  }
  return out;
}

SegmentSpec build_segment(FractionalQueryProgram chunk) {
  chunk.validate();
  const double cost = chunk.cost();
  if (cost > 0.2 + kCostSlack) throw ValidationError("segment: cost exceeds 1/5");
  SegmentSpec spec;
  spec.p = 1.0;
  spec.mu = 0.0;
  double theta = 0.0;
  for (const QueryStep& s : chunk.steps) {
    const GadgetParams g = gadget_params(s.alpha);
    spec.p *= g.q;
    spec.mu += g.s / (g.c + g.s);
    theta -= kPi * s.alpha / 2.0;
  }
  if (spec.p <= 0.25) throw InvariantError("segment: p <= 1/4 despite cost <= 1/5");
  spec.fudge_angle = std::acos(1.0 / (2.0 * std::sqrt(spec.p)));
  spec.theta = std::fmod(theta + 4.0 * kPi, 2.0 * kPi);
  spec.chunk = std::move(chunk);
  return spec;
}

Matrix fudge_gate(double p) {
  const double cb = 1.0 / (2.0 * std::sqrt(p));
  const double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
  Matrix b(2, 2);
  b << cb, -sb, sb, cb;
  return b;
}

Matrix segment_operator_dense(const SegmentSpec& spec) {
  const int m = spec.m();
  const std::int64_t sys = spec.chunk.system_dim;
  const std::int64_t anc = std::int64_t{1} << m;
  const std::int64_t total = 2 * anc * sys;
  if (static_cast<std::size_t>(total) > tol::dense_limit()) {
    throw ValidationError("segment_operator_dense: dimension exceeds the dense limit");
  }
  const Matrix id_sys = Matrix::Identity(sys, sys);

  // Control qubit i is bit (m-1-i) of the ancilla index (gadget 1 first).
  auto control_gate = [&](int i, const Matrix& u2) {
    Matrix g = Matrix::Identity(1, 1);
    for (int j = 0; j < m; ++j) {
      g = linalg::kron(g, j == i ? u2 : Matrix::Identity(2, 2));
    }
    return linalg::kron(Matrix::Identity(2, 2), linalg::kron(g, id_sys));
  };
  auto controlled_query = [&](int i, const Matrix& q) {
    Matrix g = Matrix::Zero(anc * sys, anc * sys);
    for (std::int64_t x = 0; x < anc; ++x) {
      const bool on = (x >> (m - 1 - i)) & 1;
      g.block(x * sys, x * sys, sys, sys) = on ? q : id_sys;
    }
    return linalg::kron(Matrix::Identity(2, 2), g);
  };
  auto sys_gate = [&](const Matrix& u) {
    return linalg::kron(Matrix::Identity(2 * anc, 2 * anc), u);
  };

  Matrix op = sys_gate(spec.chunk.drive(0));
  for (int i = 0; i < m; ++i) {
    op = control_gate(i, gate_r(spec.chunk.steps[static_cast<std::size_t>(i)].alpha)) * op;
  }
  // The opening R gates commute with the system drive; order above matches
  // the dotted-box prep followed by U_0.
  for (int i = 0; i < m; ++i) {
    const QueryStep& s = spec.chunk.steps[static_cast<std::size_t>(i)];
    op = controlled_query(i, spec.chunk.oracles[static_cast<std::size_t>(s.oracle)]) * op;
    op = sys_gate(spec.chunk.drive(static_cast<std::size_t>(i) + 1)) * op;
  }
  for (int i = 0; i < m; ++i) {
    const double a = spec.chunk.steps[static_cast<std::size_t>(i)].alpha;
    op = control_gate(i, gate_r(a) * gate_p(a)) * op;
  }
  Matrix fudge = linalg::kron(fudge_gate(spec.p), Matrix::Identity(anc * sys, anc * sys));
  return fudge * op;
}

double chernoff_tail_bound(double mu, int k) {
  if (k < 1) throw ValidationError("chernoff_tail_bound: k must be >= 1");
  if (mu <= 0.0) return 0.0;
  if (mu >= k) return 1.0;  // outside the bound's regime; never hit for cost <= 1/5
  const double log_bound = (k - mu) + k * (std::log(mu) - std::log(k));
  return std::exp(log_bound);
}

double truncation_error_bound(double mu, int k) {
  const double tail = std::min(1.0, chernoff_tail_bound(mu, k));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(1.0 - tail)));
}

double segment_mu(const std::vector<double>& alphas) {
  double mu = 0.0;
  for (double a : alphas) {
    const GadgetParams g = gadget_params(a);
    mu += g.s / (g.c + g.s);
  }
  return mu;
}

int truncation_order(const std::vector<double>& alphas, double eps_seg) {
  if (eps_seg <= 0.0 || eps_seg >= 1.0) {
    throw ValidationError("truncation_order: eps must lie in (0, 1)");
  }
  const double mu = segment_mu(alphas);
  const double target = eps_seg * eps_seg / 2.0;
  int k = 1;
  while (chernoff_tail_bound(mu, k) >= target) {
    ++k;
    if (k > 4096) throw InvariantError("truncation_order: failed to converge");
  }
  return k;
}

Matrix adjust_eigenvalues(const Matrix& g) {
  if (!linalg::is_involution(g) || !linalg::is_hermitian(g)) {
    throw ValidationError("adjust_eigenvalues: G must be Hermitian with G^2 = I");
  }
  return kPi / 2.0 * (Matrix::Identity(g.rows(), g.cols()) + g);
}

Matrix multiplex_oracle(const std::vector<decomp::SignedPermTerm>& terms) {
  if (terms.empty()) throw ValidationError("multiplex_oracle: need at least one term");
  const std::int64_t sys = terms.front().dim;
  for (const auto& t : terms) {
    if (t.dim != sys) throw ValidationError("multiplex_oracle: dimension mismatch");
  }
  const std::int64_t eta = static_cast<std::int64_t>(terms.size());
  Matrix q = Matrix::Zero(eta * sys, eta * sys);
  for (std::int64_t j = 0; j < eta; ++j) {
    const Matrix h = adjust_eigenvalues(terms[static_cast<std::size_t>(j)].dense());
    q.block(j * sys, j * sys, sys, sys) = linalg::exact_expm(h, 1.0);
  }
  return q;
}

FractionalQueryProgram trotter_program(const std::vector<decomp::SignedPermTerm>& terms,
                                       double gamma, double t, int r, int order) {
  if (r < 1) throw ValidationError("trotter_program: r must be >= 1");
  if (order != 1 && order != 2) throw ValidationError("trotter_program: order must be 1 or 2");
  FractionalQueryProgram p;
  if (terms.empty() || t == 0.0) {
    p.system_dim = terms.empty() ? 1 : static_cast<int>(terms.front().dim);
    for (const auto& term : terms) {
      p.perm_oracles.push_back(term);
      p.oracles.push_back(-term.dense());
    }
    return p;
  }
  const int eta = static_cast<int>(terms.size());
  p.system_dim = static_cast<int>(terms.front().dim);
  for (const auto& term : terms) {
    p.perm_oracles.push_back(term);
    p.oracles.push_back(-term.dense());
  }
  const double alpha = 2.0 * gamma * t / (kPi * r) / (order == 2 ? 2.0 : 1.0);
  if (alpha > 1.0) {
    throw ValidationError("trotter_program: r too small, per-step fraction exceeds 1");
  }
  double ledger = 0.0;
  for (int rep = 0; rep < r; ++rep) {
    for (int j = 0; j < eta; ++j) {
      p.steps.push_back({j, alpha});
      ledger += kPi * alpha / 2.0;
    }
    if (order == 2) {
      for (int j = eta - 1; j >= 0; --j) {
        p.steps.push_back({j, alpha});
        ledger += kPi * alpha / 2.0;
      }
    }
  }
  p.phase = std::polar(1.0, ledger);
  return p;
}

std::vector<FractionalQueryProgram> split_program(const FractionalQueryProgram& p, int n_chunks) {
  if (n_chunks < 1) throw ValidationError("split_program: need at least one chunk");
  const double per_chunk = p.cost() / n_chunks;
  const bool with_drives = !p.drives.empty();
  const Matrix id = Matrix::Identity(p.system_dim, p.system_dim);

  std::vector<FractionalQueryProgram> chunks;
  chunks.reserve(static_cast<std::size_t>(n_chunks));
  std::size_t step_idx = 0;
  double remaining = p.steps.empty() ? 0.0 : p.steps[0].alpha;
  for (int c = 0; c < n_chunks; ++c) {
    FractionalQueryProgram chunk;
    chunk.system_dim = p.system_dim;
    chunk.oracles = p.oracles;
    chunk.perm_oracles = p.perm_oracles;
    if (with_drives) chunk.drives.push_back(c == 0 ? p.drives[0] : id);
    // The last chunk absorbs rounding slack so the costs sum exactly.
    const bool last = (c == n_chunks - 1);
    double budget = last ? std::numeric_limits<double>::infinity() : per_chunk;
    while (step_idx < p.steps.size() && budget > kCostSlack) {
      const double take = std::min(remaining, budget);
      chunk.steps.push_back({p.steps[step_idx].oracle, take});
      remaining -= take;
      if (!last) budget -= take;
      if (remaining <= kCostSlack) {
        // Step finished: its trailing drive closes out here.
        if (with_drives) chunk.drives.push_back(p.drives[step_idx + 1]);
        ++step_idx;
        remaining = step_idx < p.steps.size() ? p.steps[step_idx].alpha : 0.0;
      } else {
        // Step split across the boundary; the identity closes the chunk and
        // the remainder continues as the next chunk's first query.
        if (with_drives) chunk.drives.push_back(id);
        break;
      }
    }
    if (with_drives && chunk.drives.size() != chunk.steps.size() + 1) {
      chunk.drives.push_back(id);
    }
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

void pad_to_uniform(std::vector<FractionalQueryProgram>& chunks) {
  std::size_t target = 0;
  for (const auto& c : chunks) target = std::max(target, c.steps.size());
  for (auto& c : chunks) {
    while (c.steps.size() < target && !c.steps.empty()) {
      // Split the largest step in half; exact by the fraction algebra.
      std::size_t big = 0;
      for (std::size_t i = 1; i < c.steps.size(); ++i) {
        if (c.steps[i].alpha > c.steps[big].alpha) big = i;
      }
      const QueryStep s = c.steps[big];
      c.steps[big].alpha = s.alpha / 2.0;
      c.steps.insert(c.steps.begin() + static_cast<std::ptrdiff_t>(big),
                     {s.oracle, s.alpha / 2.0});
      if (!c.drives.empty()) {
        c.drives.insert(c.drives.begin() + static_cast<std::ptrdiff_t>(big) + 1,
                        Matrix::Identity(c.system_dim, c.system_dim));
      }
    }
  }
}

EncodedAncilla make_encoded_ancilla(const std::vector<double>& alphas, int k) {
  const int m = static_cast<int>(alphas.size());
  if (k < 0) throw ValidationError("encoded ancilla: k must be >= 0");
  EncodedAncilla enc;
  enc.m = m;
  enc.k = std::min(k, m);

  // Per-position log factors of the prep product state.
  std::vector<double> log0(static_cast<std::size_t>(m)), log1(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) {
    const GadgetParams g = gadget_params(alphas[static_cast<std::size_t>(p)]);
    const double norm = std::log(g.c + g.s);
    log0[static_cast<std::size_t>(p)] = 0.5 * (std::log(g.c) - norm);
    // s = 0 would mean alpha = 0, excluded by the program invariant.
    log1[static_cast<std::size_t>(p)] = 0.5 * (std::log(g.s) - norm);
  }
  std::vector<double> prefix0(static_cast<std::size_t>(m) + 1, 0.0);
  for (int p = 0; p < m; ++p) {
    prefix0[static_cast<std::size_t>(p) + 1] = prefix0[static_cast<std::size_t>(p)] +
                                               log0[static_cast<std::size_t>(p)];
  }

  // Lexicographic enumeration by (h, l_1, ..., l_h) with parent links.
  std::vector<double> log_amp;
  std::vector<std::vector<int>> comps;
  std::vector<int> parent, last_pos;
  comps.push_back({});
  parent.push_back(-1);
  last_pos.push_back(-1);
  log_amp.push_back(prefix0[static_cast<std::size_t>(m)]);

  std::size_t level_begin = 0;
  std::size_t level_end = 1;
  for (int h = 1; h <= enc.k; ++h) {
    for (std::size_t b = level_begin; b < level_end; ++b) {
      // Extend composition b by one more query after a gap of l >= 0.
      int used = 0;
      for (int g : comps[b]) used += g;
      used += static_cast<int>(comps[b].size());
      const int base_pos = used;  // next free 0-based position
      for (int gap = 0; base_pos + gap < m; ++gap) {
        const int pos = base_pos + gap;
        std::vector<int> c = comps[b];
        c.push_back(gap);
        // Amplitude: swap the bit at `pos` from 0 to 1 relative to the parent.
        const double la = log_amp[b] - log0[static_cast<std::size_t>(pos)] +
                          log1[static_cast<std::size_t>(pos)];
        comps.push_back(std::move(c));
        parent.push_back(static_cast<int>(b));
        last_pos.push_back(pos);
        log_amp.push_back(la);
      }
    }
    level_begin = level_end;
    level_end = comps.size();
    if (comps.size() > tol::kMaxEncodedDim) {
      throw ValidationError("encoded ancilla: composition basis exceeds the configured limit");
    }
  }

  enc.comps = std::move(comps);
  enc.parent = std::move(parent);
  enc.last_position = std::move(last_pos);
  enc.zeta = Vector(static_cast<Eigen::Index>(enc.comps.size()));
  double norm2 = 0.0;
  for (std::size_t i = 0; i < enc.comps.size(); ++i) {
    const double a = std::exp(log_amp[i]);
    enc.zeta(static_cast<Eigen::Index>(i)) = a;
    norm2 += a * a;
  }
  enc.deficit2 = std::max(0.0, 1.0 - norm2);
  return enc;
}

Vector encode_product_state(const EncodedAncilla& enc, const std::vector<Complex>& f0,
                            const std::vector<Complex>& f1) {
  if (static_cast<int>(f0.size()) != enc.m || static_cast<int>(f1.size()) != enc.m) {
    throw ValidationError("encode_product_state: need one factor pair per position");
  }
  Vector out(static_cast<Eigen::Index>(enc.size()));
  Complex full0{1.0, 0.0};
  for (int p = 0; p < enc.m; ++p) full0 *= f0[static_cast<std::size_t>(p)];
  out(0) = full0;
  // Children reuse the parent's amplitude with one bit flipped: the lex
  // order guarantees parents precede children.
  for (std::size_t i = 1; i < enc.size(); ++i) {
    const int pos = enc.last_position[i];
    const Complex swap = (std::abs(f0[static_cast<std::size_t>(pos)]) == 0.0)
                             ? Complex(0.0, 0.0)
                             : f1[static_cast<std::size_t>(pos)] / f0[static_cast<std::size_t>(pos)];
    out(static_cast<Eigen::Index>(i)) =
        out(static_cast<Eigen::Index>(enc.parent[i])) * swap;
  }
  return out;
}

}  // namespace fqsim::fq
