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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qqbf/riemann.hpp"

namespace qqbf {

/// One programmable Mach-Zehnder node of the rectangular mesh.
/// Reflectivity R(theta) = sin^2(theta/2); phi sits on the top output port.
struct MziSetting {
  int layer = 1;     ///< 1-based column, counted from the input facet
  int top_mode = 0;  ///< 0-based upper mode of the coupled pair
  double theta = 0.0;
  double phi = 0.0;
};

/// Settings for the full rectangular mesh. `nodes` must tile the rectangle
/// exactly (15 nodes for 6 modes). The optional phase layers hold external
/// phases an exact factorization needs; they are part of the program, never
/// silently dropped.
struct MeshProgram {
  int modes = 6;
  std::vector<MziSetting> nodes;
  std::vector<double> input_phases;   ///< empty or one phase per mode
  std::vector<double> output_phases;  ///< empty or one phase per mode
};

/// Rectangle positions (layer, top_mode) in layer-major order.
std::vector<std::pair<int, int>> rectangle_positions(int modes);

/// Throws unless the program's nodes tile the rectangle exactly.
void validate_layout(const MeshProgram& program);

/// i e^{i theta/2} [[sin(t/2) e^{i phi}, cos(t/2) e^{i phi}],
///                  [cos(t/2),          -sin(t/2)]]
Eigen::Matrix2cd mzi_matrix(double theta, double phi);

/// The projection variant with the phase on the input column; measuring the
/// first output after it projects onto |theta, -phi>.
Eigen::Matrix2cd projector_matrix(double theta, double phi);

/// Product of the embedded node matrices in layer order (layer 1 acts
/// first), wrapped by the external phase layers.
Eigen::MatrixXcd compose(const MeshProgram& program);

/// Exact factorization of a unitary into the rectangular mesh. The returned
/// program satisfies ||compose(decompose(u)) - u||_F at the 1e-10 level; the
/// external phases land in the input phase layer.
MeshProgram decompose(const Eigen::MatrixXcd& u);

/// Frobenius distance ||compose(program) - u||_F.
double recompose_residual(const MeshProgram& program, const Eigen::MatrixXcd& u);

/// State-preparation node settings: injecting one photon into the top input
/// of BS(theta, phi) emits |z> on the pair.
std::pair<double, double> prepare_settings(const RiemannPoint& z);

/// Projection node settings: with these, the port-0 probability after
/// projector_matrix equals |<target|psi>|^2.
std::pair<double, double> projector_settings(const RiemannPoint& target);

}  // namespace qqbf
