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

#include "fqsim/serialize.hpp"

#include <cstdio>

#include "fqsim/errors.hpp"

namespace fqsim::serialize {

namespace {

std::string phase_code(const Complex& v) {
  if (std::abs(v - Complex(1, 0)) < 1e-9) return "+1";
  if (std::abs(v - Complex(-1, 0)) < 1e-9) return "-1";
  if (std::abs(v - Complex(0, 1)) < 1e-9) return "+i";
  if (std::abs(v - Complex(0, -1)) < 1e-9) return "-i";
  throw InvariantError("term phase is not a fourth root of unity");
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row.at(static_cast<std::size_t>(c));
      m(i, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json term_to_json(const decomp::SignedPermTerm& t) {
  json mapping = json::array();
  for (std::int64_t r = 0; r < t.dim; ++r) {
    mapping.push_back(json::array(
        {r, t.column[static_cast<std::size_t>(r)], phase_code(t.phase[static_cast<std::size_t>(r)])}));
  }
  return json{{"tag", std::string(1, t.xi)},
              {"level", t.level},
              {"sign", t.sign > 0 ? "+" : "-"},
              {"color", json::array({t.color.a, t.color.b})},
              {"mapping", std::move(mapping)}};
}

json decomposition_to_json(const decomp::Decomposition& d) {
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back(term_to_json(t));
  return json{{"gamma", d.gamma},
              {"doubled_qubits", d.doubled_qubits},
              {"eta", d.terms.size()},
              {"reconstruction_error_max", d.reconstruction_error},
              {"terms", std::move(terms)}};
}

json program_to_json(const fq::FractionalQueryProgram& p) {
  json oracles = json::array();
  for (const auto& q : p.oracles) oracles.push_back(matrix_to_json(q));
  json steps = json::array();
  for (const auto& s : p.steps) steps.push_back(json{{"index", s.oracle}, {"alpha", s.alpha}});
  json drives = json::array();
  for (const auto& u : p.drives) drives.push_back(matrix_to_json(u));
  return json{{"system_dim", p.system_dim},
              {"oracles", std::move(oracles)},
              {"steps", std::move(steps)},
              {"drives", std::move(drives)},
              {"phase", json::array({p.phase.real(), p.phase.imag()})}};
}

fq::FractionalQueryProgram program_from_json(const json& j) {
  fq::FractionalQueryProgram p;
  p.system_dim = j.at("system_dim").get<int>();
  for (const json& q : j.at("oracles")) p.oracles.push_back(matrix_from_json(q));
  for (const json& s : j.at("steps")) {
    p.steps.push_back({s.at("index").get<int>(), s.at("alpha").get<double>()});
  }
  for (const json& u : j.at("drives")) p.drives.push_back(matrix_from_json(u));
  if (j.contains("phase")) {
    p.phase = Complex(j.at("phase").at(0).get<double>(), j.at("phase").at(1).get<double>());
  }
  p.validate();
  return p;
}

json plan_to_json(const pipeline::SimulationPlan& p) {
  return json{{"d", p.d},
              {"max_norm", p.max_norm},
              {"t", p.t},
              {"eps", p.eps},
              {"eps_split", json::array({p.split.dec, p.split.trot, p.split.seg})},
              {"tau", p.tau},
              {"gamma", p.gamma},
              {"eta_bound", p.eta_bound},
              {"r", p.r},
              {"T", p.T},
              {"segments", p.segments},
              {"k", p.k},
              {"eps_unitary", p.eps_unitary},
              {"m_per_segment", p.m_per_segment},
              {"predicted_queries", p.predicted_queries},
              {"executable", p.executable},
              {"note", p.note}};
}

json report_to_json(const pipeline::SimReport& r) {
  return json{{"plan", plan_to_json(r.formula)},
              {"exec",
               json{{"gamma", r.exec.gamma},
                    {"eta", r.exec.eta},
                    {"r", r.exec.r},
                    {"order", r.exec.order},
                    {"T", r.exec.T},
                    {"segments", r.exec.segments},
                    {"m_uniform", r.exec.m_uniform},
                    {"k_formula", r.exec.k_formula},
                    {"k_exec", r.exec.k_exec},
                    {"eps_unitary", r.exec.eps_unitary},
                    {"dec_error_measured", r.exec.dec_error},
                    {"trot_error_measured", r.exec.trot_error}}},
              {"queries_measured", r.queries_measured},
              {"queries_predicted", r.queries_predicted},
              {"oracle_slot_queries", r.oracle_slot_queries},
              {"error_measured", r.spectral_error},
              {"global_phase", json::array({r.global_phase.real(), r.global_phase.imag()})},
              {"seconds", r.wall_seconds}};
}

std::string sweep_to_csv(const std::vector<pipeline::SweepRow>& rows) {
  std::string out = "epsilon,k,segments,queries_predicted,queries_measured,error_measured,seconds\n";
  for (const auto& r : rows) {
    out += fmt17(r.eps);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.segments);
    out += ',';
    out += std::to_string(r.queries_predicted);
    out += ',';
    out += std::to_string(r.queries_measured);
    out += ',';
    out += fmt17(r.error_measured);
    out += ',';
    out += fmt17(r.seconds);
    out += '\n';
  }
  return out;
}

}  // namespace fqsim::serialize
