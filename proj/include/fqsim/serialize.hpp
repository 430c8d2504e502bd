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

#include <string>

#include "json.hpp"

#include "fqsim/decompose.hpp"
#include "fqsim/fracquery.hpp"
#include "fqsim/pipeline.hpp"

namespace fqsim::serialize {

using nlohmann::json;

json matrix_to_json(const Matrix& m);  // row-major [re, im] pairs
Matrix matrix_from_json(const json& j);

json term_to_json(const decomp::SignedPermTerm& t);
json decomposition_to_json(const decomp::Decomposition& d);

json program_to_json(const fq::FractionalQueryProgram& p);
fq::FractionalQueryProgram program_from_json(const json& j);

json plan_to_json(const pipeline::SimulationPlan& p);
json report_to_json(const pipeline::SimReport& r);

std::string sweep_to_csv(const std::vector<pipeline::SweepRow>& rows);

}  // namespace fqsim::serialize
