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

#include "qqbf/presets.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qqbf/fock.hpp"

namespace qqbf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Node vocabulary. A bar with phi = pi is the exact identity; a cross with
// theta = 0 swaps the pair up to an i on each leg.
constexpr double kBar = std::numbers::pi;
constexpr double kCross = 0.0;
constexpr double kBalanced = 0.5 * std::numbers::pi;

// Unbalanced mixer angles for the addition stages. theta_low sends the
// amplitude-sqrt(R) route through the bar path with a positive cosine,
// theta_high realizes the complementary splitting with the sign flip the
// sum geometry needs when the output qubit leaves on the lower port.
double golden_theta_low() { return 2.0 * std::asin(std::sqrt(1.0 - kGoldenReflectivity)); }
double golden_theta_high() { return 2.0 * kPi - 2.0 * std::asin(std::sqrt(kGoldenReflectivity)); }

MeshProgram identity_program() {
  MeshProgram program;
  program.modes = 6;
  for (const auto& [layer, top] : rectangle_positions(6))
    program.nodes.push_back({layer, top, kBar, kPi});
  return program;
}

void set_node(MeshProgram& program, int layer, int top, double theta, double phi) {
  for (MziSetting& node : program.nodes) {
    if (node.layer == layer && node.top_mode == top) {
      node.theta = theta;
      node.phi = phi;
      return;
    }
  }
  throw std::logic_error("no such mesh node");
}

using Inputs = std::vector<RiemannPoint>;

FieldResult then_mul(const FieldResult& a, const RiemannPoint& b) {
  return a.is_indeterminate() ? a : field_mul(a.point(), b);
}

FieldResult then_negate(const FieldResult& a) {
  return a.is_indeterminate() ? a : field_neg(a.point());
}

FieldResult then_add(const FieldResult& a, const RiemannPoint& b) {
  return a.is_indeterminate() ? a : field_add(a.point(), b);
}

FieldResult then_harmonic(const FieldResult& a, const RiemannPoint& b) {
  return a.is_indeterminate() ? a : field_harmonic(a.point(), b);
}

std::vector<int> herald(std::initializer_list<int> modes) {
  std::vector<int> occ(6, 0);
  for (int m : modes) occ[static_cast<std::size_t>(m)] += 1;
  return occ;
}

Preset make_inversion() {
  Preset p;
  p.name = PresetName::kInversion;
  p.program = identity_program();
  set_node(p.program, 3, 0, kCross, 0.0);
  p.input_rails = {{0, 1}};
  p.output_rails = {0, 1};
  p.branches.push_back(
      {"inv", herald({}), [](const Inputs& in) { return field_inv(in[0]); }});
  return p;
}

Preset make_product() {
  Preset p;
  p.name = PresetName::kProduct;
  p.program = identity_program();
  set_node(p.program, 2, 1, kBalanced, 0.0);
  p.input_rails = {{0, 1}, {2, 3}};
  p.output_rails = {0, 3};
  p.branches.push_back(
      {"+", herald({1}), [](const Inputs& in) { return field_mul(in[0], in[1]); }});
  p.branches.push_back({"-", herald({2}), [](const Inputs& in) {
                          return then_negate(field_mul(in[0], in[1]));
                        }});
  return p;
}

Preset make_addition() {
  Preset p;
  p.name = PresetName::kAddition;
  p.program = identity_program();
  set_node(p.program, 2, 1, kCross, kPi);
  set_node(p.program, 3, 0, golden_theta_low(), kHalfPi);
  set_node(p.program, 3, 2, golden_theta_low(), kHalfPi);
  p.input_rails = {{0, 1}, {2, 3}};
  p.output_rails = {0, 3};
  p.branches.push_back(
      {"S", herald({2}), [](const Inputs& in) { return field_add(in[0], in[1]); }});
  p.branches.push_back(
      {"I", herald({1}), [](const Inputs& in) { return field_harmonic(in[0], in[1]); }});
  return p;
}

// Shared skeleton of the two-operation programs: the first operation acts
// between qubits 1 and 2 after the layer-2 routing, the second combines its
// output with qubit 3 around layer 4, and layer 5 brings the output qubit to
// the rail pair (3,4) in front of the projection stage. Herald photons end
// on modes {0,1} for the first operation and {2,5} for the second.
struct ConcatPhases {
  double bs4_phi = 0.0;
  double bs6_theta = 0.0, bs6_phi = 0.0;
  double bs7_theta = 0.0, bs7_phi = 0.0;
  double bs9_phi = 0.0;
  double bs10_theta = 0.0, bs10_phi = 0.0;
  double bs12_theta = 0.0, bs12_phi = 0.0;
  double bs13_theta = 0.0, bs13_phi = 0.0;
  bool bs4_cross = true;
  bool bs6_cross = false;
  bool bs9_cross = true;
  bool bs12_cross = false;
  bool bs13_cross = false;
};

MeshProgram concat_program(const ConcatPhases& c) {
  MeshProgram program = identity_program();
  set_node(program, 2, 1, c.bs4_cross ? kCross : kBalanced, c.bs4_phi);
  set_node(program, 3, 0, c.bs6_cross ? kCross : c.bs6_theta, c.bs6_phi);
  if (c.bs7_theta != 0.0) set_node(program, 3, 2, c.bs7_theta, c.bs7_phi);
  set_node(program, 4, 1, c.bs9_cross ? kCross : 0.0, c.bs9_phi);
  set_node(program, 4, 3, c.bs10_theta, c.bs10_phi);
  set_node(program, 5, 2, c.bs12_cross ? kCross : c.bs12_theta, c.bs12_phi);
  set_node(program, 5, 4, c.bs13_cross ? kCross : c.bs13_theta, c.bs13_phi);
  return program;
}

Preset make_addition_then_product() {
  // Sum between qubits 1,2 (mixers at layer 3, complementary reflectivities),
  // product of the sum output with qubit 3 on the balanced layer-4 node.
  ConcatPhases c;
  c.bs4_cross = true;
  c.bs4_phi = kPi;
  c.bs6_theta = golden_theta_high();
  c.bs6_phi = 0.0;
  c.bs7_theta = golden_theta_low();
  c.bs7_phi = 0.0;
  c.bs9_phi = 0.0;
  c.bs10_theta = kBalanced;
  c.bs10_phi = 0.0;
  c.bs12_cross = true;
  c.bs12_phi = 0.0;
  c.bs13_cross = true;
  c.bs13_phi = 0.0;

  Preset p;
  p.name = PresetName::kAdditionThenProduct;
  p.program = concat_program(c);
  p.input_rails = {{0, 1}, {2, 3}, {4, 5}};
  p.output_rails = {3, 4};
  p.branches.push_back({"(S,+)", herald({1, 2}), [](const Inputs& in) {
                          return then_mul(field_add(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(S,-)", herald({1, 5}), [](const Inputs& in) {
                          return then_negate(then_mul(field_add(in[0], in[1]), in[2]));
                        }});
  p.branches.push_back({"(I,+)", herald({0, 2}), [](const Inputs& in) {
                          return then_mul(field_harmonic(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(I,-)", herald({0, 5}), [](const Inputs& in) {
                          return then_negate(then_mul(field_harmonic(in[0], in[1]), in[2]));
                        }});
  return p;
}

Preset make_product_then_addition() {
  // Product between qubits 1,2 on the balanced layer-2 node, sum of the
  // product output with qubit 3 on the layer-5 mixer pair.
  ConcatPhases c;
  c.bs4_cross = false;
  c.bs4_phi = 0.0;
  c.bs6_cross = true;
  c.bs6_phi = 0.0;
  c.bs7_theta = 0.0;  // stays a bar
  c.bs9_phi = 0.0;
  c.bs10_theta = kCross;
  c.bs10_phi = 0.0;
  c.bs12_theta = golden_theta_high();
  c.bs12_phi = 0.0;
  c.bs13_theta = golden_theta_low();
  c.bs13_phi = 0.0;

  Preset p;
  p.name = PresetName::kProductThenAddition;
  p.program = concat_program(c);
  p.input_rails = {{0, 1}, {2, 3}, {4, 5}};
  p.output_rails = {3, 4};
  p.branches.push_back({"(+,S)", herald({0, 5}), [](const Inputs& in) {
                          return then_add(field_mul(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(+,I)", herald({0, 2}), [](const Inputs& in) {
                          return then_harmonic(field_mul(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(-,S)", herald({1, 5}), [](const Inputs& in) {
                          return then_add(then_negate(field_mul(in[0], in[1])), in[2]);
                        }});
  p.branches.push_back({"(-,I)", herald({1, 2}), [](const Inputs& in) {
                          return then_harmonic(then_negate(field_mul(in[0], in[1])), in[2]);
                        }});
  return p;
}

Preset make_product_product() {
  ConcatPhases c;
  c.bs4_cross = false;
  c.bs4_phi = 0.0;
  c.bs6_cross = true;
  c.bs7_theta = 0.0;
  c.bs10_theta = kBalanced;
  c.bs10_phi = 0.0;
  c.bs12_cross = true;
  c.bs13_cross = true;

  Preset p;
  p.name = PresetName::kProductProduct;
  p.program = concat_program(c);
  p.input_rails = {{0, 1}, {2, 3}, {4, 5}};
  p.output_rails = {3, 4};
  p.branches.push_back({"(+,+)", herald({0, 2}), [](const Inputs& in) {
                          return then_mul(field_mul(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(+,-)", herald({0, 5}), [](const Inputs& in) {
                          return then_negate(then_mul(field_mul(in[0], in[1]), in[2]));
                        }});
  p.branches.push_back({"(-,+)", herald({1, 2}), [](const Inputs& in) {
                          return then_mul(then_negate(field_mul(in[0], in[1])), in[2]);
                        }});
  p.branches.push_back({"(-,-)", herald({1, 5}), [](const Inputs& in) {
                          return then_negate(
                              then_mul(then_negate(field_mul(in[0], in[1])), in[2]));
                        }});
  return p;
}

Preset make_addition_addition() {
  ConcatPhases c;
  c.bs4_cross = true;
  c.bs4_phi = kPi;
  c.bs6_theta = golden_theta_high();
  c.bs7_theta = golden_theta_low();
  c.bs10_theta = kCross;
  c.bs10_phi = 0.0;
  c.bs12_theta = golden_theta_high();
  c.bs13_theta = golden_theta_low();

  Preset p;
  p.name = PresetName::kAdditionAddition;
  p.program = concat_program(c);
  p.input_rails = {{0, 1}, {2, 3}, {4, 5}};
  p.output_rails = {3, 4};
  p.branches.push_back({"(S,S)", herald({1, 5}), [](const Inputs& in) {
                          return then_add(field_add(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(S,I)", herald({1, 2}), [](const Inputs& in) {
                          return then_harmonic(field_add(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(I,S)", herald({0, 5}), [](const Inputs& in) {
                          return then_add(field_harmonic(in[0], in[1]), in[2]);
                        }});
  p.branches.push_back({"(I,I)", herald({0, 2}), [](const Inputs& in) {
                          return then_harmonic(field_harmonic(in[0], in[1]), in[2]);
                        }});
  return p;
}

FockVector dual_rail_input(int modes, const std::vector<std::pair<int, int>>& rails,
                           const std::vector<RiemannPoint>& inputs) {
  struct Monomial {
    std::vector<int> occ;
    Complex coeff;
  };
  std::vector<Monomial> terms = {{std::vector<int>(static_cast<std::size_t>(modes), 0),
                                  Complex{1.0, 0.0}}};
  for (std::size_t k = 0; k < rails.size(); ++k) {
    const auto& [r0, r1] = rails[k];
    const std::array<std::pair<int, Complex>, 2> routes = {
        std::pair<int, Complex>{r0, inputs[k].alpha()}, {r1, inputs[k].beta()}};
    std::vector<Monomial> next;
    next.reserve(terms.size() * 2);
    for (const Monomial& t : terms) {
      for (const auto& [mode, amp] : routes) {
        if (amp == Complex{0.0, 0.0}) continue;
        Monomial m = t;
        m.occ[static_cast<std::size_t>(mode)] += 1;
        m.coeff *= amp;
        next.push_back(std::move(m));
      }
    }
    terms = std::move(next);
  }
  FockVector psi(modes);
  std::map<std::vector<int>, Complex> acc;
  for (const Monomial& t : terms) acc[t.occ] += t.coeff;
  for (const auto& [occ, coeff] : acc) {
    double fac = 1.0;
    for (int n : occ)
      for (int i = 2; i <= n; ++i) fac *= i;
    psi.add(FockState(occ), coeff * std::sqrt(fac));
  }
  return psi;
}

}  // namespace

std::string to_string(PresetName name) {
  switch (name) {
    case PresetName::kInversion:
      return "inversion";
    case PresetName::kProduct:
      return "product";
    case PresetName::kAddition:
      return "addition";
    case PresetName::kProductThenAddition:
      return "product-addition";
    case PresetName::kAdditionThenProduct:
      return "addition-product";
    case PresetName::kProductProduct:
      return "product-product";
    case PresetName::kAdditionAddition:
      return "addition-addition";
  }
  return "?";
}

PresetName parse_preset(const std::string& text) {
  for (PresetName name :
       {PresetName::kInversion, PresetName::kProduct, PresetName::kAddition,
        PresetName::kProductThenAddition, PresetName::kAdditionThenProduct,
        PresetName::kProductProduct, PresetName::kAdditionAddition}) {
    if (to_string(name) == text) return name;
  }
  throw std::invalid_argument("unknown preset: " + text);
}

const Preset& preset(PresetName name) {
  static const std::map<PresetName, Preset> presets = [] {
    std::map<PresetName, Preset> m;
    m.emplace(PresetName::kInversion, make_inversion());
    m.emplace(PresetName::kProduct, make_product());
    m.emplace(PresetName::kAddition, make_addition());
    m.emplace(PresetName::kProductThenAddition, make_product_then_addition());
    m.emplace(PresetName::kAdditionThenProduct, make_addition_then_product());
    m.emplace(PresetName::kProductProduct, make_product_product());
    m.emplace(PresetName::kAdditionAddition, make_addition_addition());
    return m;
  }();
  return presets.at(name);
}

std::vector<PresetRun> run_preset(const Preset& preset,
                                  const std::vector<RiemannPoint>& inputs) {
  if (inputs.size() != preset.input_rails.size())
    throw std::invalid_argument("input count does not match the preset");
  const Eigen::MatrixXcd u = compose(preset.program);
  const FockVector evolved =
      evolve(u, dual_rail_input(preset.program.modes, preset.input_rails, inputs));

  const auto [r0, r1] = preset.output_rails;
  std::vector<int> complement;
  for (int mode = 0; mode < preset.program.modes; ++mode)
    if (mode != r0 && mode != r1) complement.push_back(mode);

  std::vector<PresetRun> runs;
  for (const PresetBranch& branch : preset.branches) {
    PresetRun run;
    run.label = branch.label;
    run.expected = branch.expected(inputs);
    run.output = FieldResult::indeterminate();
    std::vector<int> required;
    required.reserve(complement.size());
    for (int mode : complement)
      required.push_back(branch.herald_occupation[static_cast<std::size_t>(mode)]);
    PostselectResult sel = postselect(evolved, {r0, r1}, required);
    run.probability = sel.probability;
    if (!sel.impossible) {
      // kept modes are reported in ascending order
      const bool swap = r0 > r1;
      const Complex a = sel.conditional.amplitude(FockState(swap ? std::vector<int>{0, 1}
                                                                 : std::vector<int>{1, 0}));
      const Complex b = sel.conditional.amplitude(FockState(swap ? std::vector<int>{1, 0}
                                                                 : std::vector<int>{0, 1}));
      if (a != Complex{0.0, 0.0} || b != Complex{0.0, 0.0})
        run.output = FieldResult(RiemannPoint(a, b));
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace qqbf
