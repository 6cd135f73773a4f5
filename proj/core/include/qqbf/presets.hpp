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

#include <functional>
#include <string>
#include <vector>

#include "qqbf/blocks.hpp"
#include "qqbf/mesh.hpp"
#include "qqbf/riemann.hpp"

namespace qqbf {

enum class PresetName {
  kInversion,
  kProduct,
  kAddition,
  kProductThenAddition,
  kAdditionThenProduct,
  kProductProduct,
  kAdditionAddition,
};

std::string to_string(PresetName name);
PresetName parse_preset(const std::string& text);

/// One post-selection branch of a chip preset: the photon pattern required
/// on the herald modes and the rational function of the inputs the branch
/// realizes.
struct PresetBranch {
  std::string label;
  std::vector<int> herald_occupation;  ///< per mode; rail entries stay 0
  std::function<FieldResult(const std::vector<RiemannPoint>&)> expected;
};

/// A documented six-mode chip configuration: explicit node settings (bar,
/// cross or tuned), dual-rail input assignments, output rails and branch
/// table. Presets are stored as explicit reflectivity/phase tables rather
/// than produced by decompose(), so each entry can be audited directly.
struct Preset {
  PresetName name;
  MeshProgram program;
  std::vector<std::pair<int, int>> input_rails;  ///< z rail, unit rail per qubit
  std::pair<int, int> output_rails;
  std::vector<PresetBranch> branches;
  int photons() const { return static_cast<int>(input_rails.size()); }
};

const Preset& preset(PresetName name);

struct PresetRun {
  std::string label;
  FieldResult output = FieldResult::indeterminate();
  double probability = 0.0;
  FieldResult expected = FieldResult::indeterminate();
};

/// Ideal (fully indistinguishable) run: evolves the dual-rail inputs through
/// the composed mesh and post-selects every branch.
std::vector<PresetRun> run_preset(const Preset& preset,
                                  const std::vector<RiemannPoint>& inputs);

}  // namespace qqbf
