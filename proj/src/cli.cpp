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

#include "fqsim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fqsim/demos.hpp"
#include "fqsim/errors.hpp"
#include "fqsim/oaa.hpp"
#include "fqsim/serialize.hpp"

namespace fqsim::cli {

namespace {

using serialize::json;

struct CommonInput {
  std::string in_path;
  int gen_n = 0;
  int gen_d = 0;
  std::uint64_t seed = 1;
};

ham::SparseHamiltonianOracle load_input(const CommonInput& ci) {
  if (!ci.in_path.empty()) {
    std::ifstream f(ci.in_path);
    if (!f) throw ValidationError("cannot open input file: " + ci.in_path);
    std::stringstream buf;
    buf << f.rdbuf();
    return ham::load_coo(buf.str());
  }
  if (ci.gen_n > 0) return ham::random_sparse(ci.gen_n, ci.gen_d, ci.seed);
  throw ValidationError("no input: pass --in FILE or --gen-n/--gen-d with --seed");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file: " + out_path);
  f << text;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

pipeline::SimOptions split_options(const std::vector<double>& split) {
  pipeline::SimOptions opt;
  if (!split.empty()) {
    if (split.size() != 3) throw ValidationError("--eps-split needs three fractions");
    const double total = split[0] + split[1] + split[2];
    if (total <= 0.0) throw ValidationError("--eps-split fractions must be positive");
    opt.split.dec = split[0] / total;
    opt.split.trot = split[1] / total;
    opt.split.seg = split[2] / total;
  }
  return opt;
}

int selftest(std::ostream& out) {
  Rng rng(11);
  // Gadget identity on a random involution.
  const Matrix q = linalg::random_involution(4, rng);
  const double alpha = 0.37;
  const Matrix g = fq::gadget_circuit(q, alpha);
  const fq::GadgetParams gp = fq::gadget_params(alpha);
  const Matrix block = g.topLeftCorner(4, 4);
  const Matrix want = std::sqrt(gp.q) * std::polar(1.0, -M_PI * alpha / 2.0) *
                      linalg::fractional_power(q, alpha);
  if (linalg::max_abs(block - want) > tol::structural) {
    throw InvariantError("selftest: gadget block identity failed");
  }
  out << "gadget block identity: ok\n";

  // Segment amplitude 1/2 and one-step amplification.
  fq::FractionalQueryProgram prog;
  prog.system_dim = 2;
  prog.oracles.push_back(linalg::random_involution(2, rng));
  prog.steps = {{0, 0.08}, {0, 0.07}};
  prog.drives = {linalg::random_unitary(2, rng), linalg::random_unitary(2, rng),
                 linalg::random_unitary(2, rng)};
  const fq::SegmentSpec spec = fq::build_segment(prog);
  const Matrix seg = fq::segment_operator_dense(spec);
  const Matrix v = fq::program_product(spec.chunk);
  const std::int64_t label = seg.rows() / 2;
  const Matrix zero_block = seg.topLeftCorner(2, 2);
  if (linalg::max_abs(zero_block - 0.5 * std::polar(1.0, spec.theta) * v) > tol::structural) {
    throw InvariantError("selftest: segment amplitude is not exactly 1/2");
  }
  const Matrix amplified = oaa::amplify(seg, 1, label);
  if (linalg::max_abs(amplified.topLeftCorner(2, 2) - std::polar(1.0, spec.theta) * v) >
      tol::compositional) {
    throw InvariantError("selftest: one-step amplification did not recover V");
  }
  out << "segment amplitude and one-step amplification: ok\n";

  // Decomposition reconstruction on a random instance.
  const auto h = ham::random_sparse(2, 2, 7);
  const double gamma = 1.0 / 64.0;
  const auto dec = decomp::decompose_full(h, gamma);
  const double bound = std::sqrt(2.0) * gamma * h.sparsity() * h.sparsity();
  if (dec.reconstruction_error > bound + tol::structural) {
    throw InvariantError("selftest: reconstruction error above the bound");
  }
  for (const auto& term : dec.terms) {
    if (!term.valid()) throw InvariantError("selftest: invalid signed-permutation term");
  }
  out << "decomposition reconstruction: ok\n";

  // Parity chain closed form.
  if (std::abs(demos::parity_overlap(5, 1.0) - std::pow(std::sin(0.2), 5)) > tol::compositional) {
    throw InvariantError("selftest: parity chain overlap mismatch");
  }
  out << "parity chain closed form: ok\n";
  out << "selftest passed\n";
  return 0;
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fqsim: sparse-Hamiltonian simulation via fractional queries"};
  app.require_subcommand(1);

  CommonInput ci;
  std::string out_path;
  std::vector<double> eps_split;
  double t = 1.0;
  double eps = 1e-3;
  std::string timing = "none";

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--in", ci.in_path, "input Hamiltonian in coordinate format");
    cmd->add_option("--gen-n", ci.gen_n, "generate: qubit count");
    cmd->add_option("--gen-d", ci.gen_d, "generate: sparsity");
    cmd->add_option("--seed", ci.seed, "generator seed");
  };

  auto* cmd_decompose = app.add_subcommand("decompose", "emit the signed-permutation term list");
  double gamma = 0.0;
  add_input(cmd_decompose);
  cmd_decompose->add_option("--gamma", gamma, "rounding scale")->required();
  cmd_decompose->add_option("--out", out_path, "output path (default stdout)");

  auto* cmd_plan = app.add_subcommand("plan", "formula-level simulation plan");
  int plan_d = 0;
  double plan_hmax = 0.0;
  cmd_plan->add_option("--d", plan_d, "sparsity")->required();
  cmd_plan->add_option("--hmax", plan_hmax, "max-norm of H")->required();
  cmd_plan->add_option("--t", t, "evolution time")->required();
  cmd_plan->add_option("--eps", eps, "target error")->required();
  cmd_plan->add_option("--eps-split", eps_split, "budget fractions dec,trot,seg")->expected(3);
  cmd_plan->add_option("--out", out_path, "output path (default stdout)");

  auto* cmd_sim = app.add_subcommand("simulate", "run the pipeline and report measured error");
  add_input(cmd_sim);
  cmd_sim->add_option("--t", t, "evolution time")->required();
  cmd_sim->add_option("--eps", eps, "target error")->required();
  cmd_sim->add_option("--eps-split", eps_split, "budget fractions dec,trot,seg")->expected(3);
  cmd_sim->add_option("--out", out_path, "output path (default stdout)");

  auto* cmd_sweep = app.add_subcommand("sweep", "epsilon sweep as CSV");
  std::vector<double> eps_list;
  add_input(cmd_sweep);
  cmd_sweep->add_option("--t", t, "evolution time")->required();
  cmd_sweep->add_option("--eps-list", eps_list, "epsilon values")->required();
  cmd_sweep->add_option("--timing", timing, "seconds column: none (deterministic) or wall");
  cmd_sweep->add_option("--out", out_path, "output path (default stdout)");

  auto* cmd_demo = app.add_subcommand("demo", "lower-bound demos");
  auto* demo_parity = cmd_demo->add_subcommand("parity", "parity chain overlap table");
  int demo_n = 4;
  int demo_w = 40;
  demo_parity->add_option("--N", demo_n, "max chain length")->required();
  demo_parity->add_option("--t", t, "evolution time")->required();
  demo_parity->add_option("--out", out_path, "output path (default stdout)");
  auto* demo_bessel = cmd_demo->add_subcommand("bessel", "two-path walk overlap table");
  demo_bessel->add_option("--N", demo_n, "max input length")->required();
  demo_bessel->add_option("--t", t, "evolution time")->required();
  demo_bessel->add_option("--W", demo_w, "truncation half-width");
  demo_bessel->add_option("--out", out_path, "output path (default stdout)");
  cmd_demo->require_subcommand(1);

  auto* cmd_selftest = app.add_subcommand("selftest", "run the invariant suite");
  (void)cmd_selftest;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 convention
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (cmd_decompose->parsed()) {
    const auto h = load_input(ci);
    const auto dec = decomp::decompose_full(h, gamma);
    emit(serialize::decomposition_to_json(dec).dump(2) + "\n", out_path, out);
    return 0;
  }
  if (cmd_plan->parsed()) {
    const auto opt = split_options(eps_split);
    const auto p = pipeline::plan(plan_d, plan_hmax, t, eps, opt);
    emit(serialize::plan_to_json(p).dump(2) + "\n", out_path, out);
    return 0;
  }
  if (cmd_sim->parsed()) {
    const auto h = load_input(ci);
    const auto opt = split_options(eps_split);
    auto res = pipeline::simulate_sparse(h, t, eps, opt);
    res.report.wall_seconds = 0.0;  // reports stay byte-identical across runs
    emit(serialize::report_to_json(res.report).dump(2) + "\n", out_path, out);
    return 0;
  }
  if (cmd_sweep->parsed()) {
    if (timing != "none" && timing != "wall") {
      throw ValidationError("--timing must be none or wall");
    }
    const auto h = load_input(ci);
    const auto opt = split_options(eps_split);
    const auto rows = pipeline::sweep(h, t, eps_list, opt, timing == "wall");
    emit(serialize::sweep_to_csv(rows), out_path, out);
    return 0;
  }
  if (demo_parity->parsed()) {
    std::string csv = "N,t,closed_form,measured,abs_diff\n";
    for (int n = 1; n <= demo_n; ++n) {
      const double closed = std::pow(std::abs(std::sin(t / n)), n);
      const double measured = demos::parity_overlap(n, t);
      csv += std::to_string(n) + "," + fmt17(t) + "," + fmt17(closed) + "," + fmt17(measured) +
             "," + fmt17(std::abs(closed - measured)) + "\n";
    }
    emit(csv, out_path, out);
    return 0;
  }
  if (demo_bessel->parsed()) {
    std::string csv = "N,t,closed_form,measured,abs_diff\n";
    for (int n = 1; n <= demo_n; ++n) {
      const double closed = std::abs(demos::bessel_j(2 * n, t));
      const double measured = demos::bessel_overlap(n, t, demo_w);
      csv += std::to_string(n) + "," + fmt17(t) + "," + fmt17(closed) + "," + fmt17(measured) +
             "," + fmt17(std::abs(closed - measured)) + "\n";
    }
    emit(csv, out_path, out);
    return 0;
  }
  if (cmd_selftest->parsed()) return selftest(out);
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_impl(args, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    err << "internal invariant failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal invariant failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fqsim::cli
