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

#include "doctest.h"

#include <cmath>

#include "fqsim/errors.hpp"
#include "fqsim/hamiltonian.hpp"
#include "fqsim/pipeline.hpp"
#include "fqsim/serialize.hpp"

using namespace fqsim;
using namespace fqsim::pipeline;

TEST_CASE("plan recomputes its own invariants") {
  // tau = d^2 ||H||_max t.
  SimulationPlan p = plan(2, 1.0, 1.0, 1e-3);
  CHECK(p.tau == doctest::Approx(4.0));
  CHECK_FALSE(p.executable);  // paper-faithful r explodes the gadget count

  // d = 1, hmax = 1, t = 1: gamma = eps_dec / sqrt(2).
  SimulationPlan q = plan(1, 1.0, 1.0, 1e-3);
  const double eps_dec = 1e-3 / 3.0;
  CHECK(q.gamma == doctest::Approx(eps_dec / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(q.eta_bound == 6 * static_cast<long long>(std::ceil(1.0 / q.gamma)));
  CHECK(q.T == doctest::Approx(2.0 * q.gamma * static_cast<double>(q.eta_bound) / M_PI));
  CHECK(q.segments == static_cast<long long>(std::ceil(5.0 * q.T)));
  CHECK(q.predicted_queries == q.segments * 3 * std::min<long long>(q.k, q.m_per_segment));

  // Degenerate time is rejected, tiny time degrades gracefully.
  CHECK_THROWS_AS(plan(1, 1.0, 0.0, 1e-3), ValidationError);
  SimulationPlan tiny = plan(1, 1.0, 1e-9, 1e-3);
  CHECK(tiny.segments >= 1);
  CHECK(tiny.k >= 1);
}

TEST_CASE("plan epsilon sweep: queries grow sublogarithmically in 1/eps") {
  double prev_k = 0.0;
  for (double eps = 1e-2; eps >= 1e-8; eps /= 10.0) {
    SimulationPlan p = plan(1, 1.0, 1.0, eps);
    CHECK(static_cast<double>(p.k) >= prev_k);
    prev_k = static_cast<double>(p.k);
    const double fit = p.k * std::log(static_cast<double>(p.k)) / std::log(1.0 / eps);
    CHECK(fit >= 0.2);
    CHECK(fit <= 5.0);
  }
}

TEST_CASE("zero Hamiltonian: identity output with the structural query floor") {
  auto h = ham::load_coo("1 0\n");
  auto res = simulate_sparse(h, 1.0, 1e-3);
  CHECK(res.report.spectral_error <= 1e-12);
  CHECK(res.report.queries_measured ==
        static_cast<std::uint64_t>(res.report.exec.segments) * 3 *
            static_cast<std::uint64_t>(res.report.exec.k_exec));
  CHECK(linalg::max_abs(res.output - Matrix::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("1-qubit 0.9X at eps = 1e-3") {
  auto h = ham::load_coo("1 1\n0 1 0.9 0\n");
  auto res = simulate_sparse(h, 1.0, 1e-3);
  CHECK(res.report.spectral_error <= 1e-3);
  CHECK(res.report.queries_measured == res.report.queries_predicted);
  // The doubled output restricted to the |+> sector reproduces e^{-iHt}.
  Matrix hx(2, 2);
  hx << 0, 0.9, 0.9, 0;
  Matrix want = linalg::exact_expm(hx, 1.0);
  CHECK(linalg::spectral_distance(plus_sector_block(res.output), want) <= 1e-3);
}

TEST_CASE("1-qubit X file instance at eps = 1e-2") {
  auto h = ham::load_coo("1 1\n0 1 1 0\n");
  auto res = simulate_sparse(h, 1.0, 1e-2);
  CHECK(res.report.spectral_error <= 1e-2);
}

TEST_CASE("3-qubit random 2-sparse at eps = 1e-2 with the error-budget ledger") {
  auto h = ham::random_sparse(3, 2, 7);
  const double t = 1.0;
  auto res = simulate_sparse(h, t, 1e-2);
  const auto& cfg = res.report.exec;
  CHECK(res.report.spectral_error <= 1e-2);
  CHECK(res.report.queries_measured == res.report.queries_predicted);
  CHECK(res.report.queries_measured ==
        static_cast<std::uint64_t>(cfg.segments) * 3 * static_cast<std::uint64_t>(cfg.k_exec));

  // Budget additivity: rebuild the stages from the reported knobs and
  // measure each error contribution independently.
  auto doubled = ham::bipartite_double(h);
  Matrix hd = ham::dense_of(doubled);
  auto dec = decomp::decompose_full(h, cfg.gamma);
  Matrix sum = Matrix::Zero(hd.rows(), hd.cols());
  for (const auto& term : dec.terms) sum += term.dense();
  const Matrix exact = linalg::exact_expm(hd, t);
  const Matrix trot_target = linalg::exact_expm(cfg.gamma * sum, t);
  const double dec_m = linalg::spectral_distance(exact, trot_target);

  auto prog = fq::trotter_program(dec.terms, cfg.gamma, t, cfg.r, cfg.order);
  const Matrix prod = fq::program_product(prog);
  const double trot_m = linalg::spectral_distance(trot_target, prog.phase * prod);

  auto chunks = fq::split_program(prog, cfg.segments);
  fq::pad_to_uniform(chunks);
  double seg_m = 0.0;
  Matrix composed = Matrix::Identity(hd.rows(), hd.cols());
  double theta_sum = 0.0;
  for (auto& c : chunks) {
    auto spec = fq::build_segment(std::move(c));
    auto seg = engine::build_encoded_segment(spec, cfg.k_exec);
    Matrix block = engine::segment_block(seg);
    const Matrix v = std::polar(1.0, spec.theta) * fq::program_product(spec.chunk);
    seg_m += linalg::spectral_distance(block, v);
    composed = block * composed;
    theta_sum += spec.theta;
  }
  const Matrix output = prog.phase * std::polar(1.0, -theta_sum) * composed;
  const double total = linalg::spectral_distance(exact, output);
  CHECK(total == doctest::Approx(res.report.spectral_error).epsilon(1e-9));
  CHECK(total <= dec_m + trot_m + seg_m + 1e-9);
}

TEST_CASE("ablation: halving r doubles the first-order product-formula error") {
  // Same instance family as the end-to-end run; its slices do not commute.
  auto h = ham::random_sparse(3, 2, 7);
  auto dec = decomp::decompose_full(h, 1.0 / 32.0);
  REQUIRE(!dec.terms.empty());
  const double e8 = trotter_error_measured(dec.terms, 1.0 / 32.0, 1.0, 8, 1);
  const double e4 = trotter_error_measured(dec.terms, 1.0 / 32.0, 1.0, 4, 1);
  const double e16 = trotter_error_measured(dec.terms, 1.0 / 32.0, 1.0, 16, 1);
  CHECK(e4 / e8 == doctest::Approx(2.0).epsilon(0.25));
  CHECK(e8 / e16 == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("sweep on the 1-qubit instance") {
  auto h = ham::load_coo("1 1\n0 1 0.9 0\n");
  std::vector<double> eps_list{1e-2, 1e-4, 1e-6};
  auto rows = sweep(h, 1.0, eps_list);
  REQUIRE(rows.size() == eps_list.size());  // CSV row count = list length
  std::uint64_t prev_queries = 0;
  int prev_k = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].eps == eps_list[i]);
    CHECK(rows[i].error_measured <= rows[i].eps);
    CHECK(rows[i].queries_measured >= prev_queries);  // monotone vs 1/eps
    CHECK(rows[i].k >= prev_k);
    prev_queries = rows[i].queries_measured;
    prev_k = rows[i].k;
    CHECK(rows[i].seconds == 0.0);  // deterministic output by default
  }
}

TEST_CASE("a singleton sweep matches simulate_sparse") {
  auto h = ham::load_coo("1 1\n0 1 0.9 0\n");
  auto rows = sweep(h, 1.0, {1e-3});
  auto res = simulate_sparse(h, 1.0, 1e-3);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].error_measured == res.report.spectral_error);
  CHECK(rows[0].queries_measured == res.report.queries_measured);
  CHECK(rows[0].segments == res.report.exec.segments);
}

TEST_CASE("simulate is deterministic given the instance") {
  auto h = ham::random_sparse(2, 2, 99);
  auto a = simulate_sparse(h, 1.0, 1e-2);
  auto b = simulate_sparse(h, 1.0, 1e-2);
  a.report.wall_seconds = b.report.wall_seconds = 0.0;
  CHECK(serialize::report_to_json(a.report).dump() == serialize::report_to_json(b.report).dump());
  CHECK(linalg::max_abs(a.output - b.output) == 0.0);
}

TEST_CASE("invalid arguments are rejected") {
  auto h = ham::load_coo("1 1\n0 1 1 0\n");
  CHECK_THROWS_AS(simulate_sparse(h, -1.0, 1e-3), ValidationError);
  CHECK_THROWS_AS(simulate_sparse(h, 1.0, 2.0), ValidationError);
}
