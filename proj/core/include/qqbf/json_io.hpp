// Copyright 2026 The qqbf Authors
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

#include <nlohmann/json.hpp>

#include "qqbf/blocks.hpp"
#include "qqbf/mesh.hpp"
#include "qqbf/noise.hpp"
#include "qqbf/pipeline.hpp"
#include "qqbf/riemann.hpp"

namespace qqbf {

using nlohmann::json;

/// {"re": .., "im": ..} for finite points, the string "inf" at the pole.
json point_to_json(const RiemannPoint& z);
RiemannPoint point_from_json(const json& j);

/// Parses CLI complex literals: "1", "i", "-0.5+0.25i", "inf".
RiemannPoint parse_point(const std::string& text);

json block_to_json(const BlockUnitary& block);
BlockUnitary block_from_json(const json& j);

json program_to_json(const MeshProgram& program);
MeshProgram program_from_json(const json& j);

json unitary_to_json(const Eigen::MatrixXcd& u);
Eigen::MatrixXcd unitary_from_json(const json& j);

json overlap_to_json(const OverlapSpec& spec);
OverlapSpec overlap_from_json(const json& j);

json report_to_json(const EnsembleReport& report);

/// Serializes with every floating-point number printed at 17 significant
/// digits, the exact round-trip width for doubles.
std::string dump_fixed_precision(const json& j, int indent = 2);

}  // namespace qqbf
