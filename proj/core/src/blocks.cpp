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

#include "qqbf/blocks.hpp"

#include <cmath>
#include <stdexcept>

namespace qqbf {

namespace {

Complex phase(double t) { return std::polar(1.0, t); }

/// Two dual-rail qubits as a normalized two-photon FockVector on 4 modes.
FockVector dual_rail_pair(const RiemannPoint& z1, const RiemannPoint& z2) {
  FockVector psi(4);
  const std::array<std::pair<int, Complex>, 2> photon1 = {
      std::pair<int, Complex>{0, z1.alpha()}, {1, z1.beta()}};
  const std::array<std::pair<int, Complex>, 2> photon2 = {
      std::pair<int, Complex>{2, z2.alpha()}, {3, z2.beta()}};
  for (const auto& [m1, a1] : photon1) {
    for (const auto& [m2, a2] : photon2) {
      const Complex amp = a1 * a2;
      if (amp == Complex{0.0, 0.0}) continue;
      std::vector<int> occ(4, 0);
      occ[static_cast<std::size_t>(m1)] += 1;
      occ[static_cast<std::size_t>(m2)] += 1;
      double boson = (m1 == m2) ? std::sqrt(2.0) : 1.0;
      psi.add(FockState(occ), amp * boson);
    }
  }
  return psi;
}

FieldResult branch_target(BlockKind kind, BranchLabel label, const RiemannPoint& z1,
                          const RiemannPoint& z2) {
  switch (label) {
    case BranchLabel::kPlus:
      return field_mul(z1, z2);
    case BranchLabel::kMinus: {
      FieldResult p = field_mul(z1, z2);
      return p.is_indeterminate() ? p : field_neg(p.point());
    }
    case BranchLabel::kSum:
      return field_add(z1, z2);
    case BranchLabel::kInverse:
      return field_harmonic(z1, z2);
  }
  (void)kind;
  throw std::logic_error("unreachable branch label");
}

}  // namespace

std::string to_string(BranchLabel label) {
  switch (label) {
    case BranchLabel::kPlus:
      return "+";
    case BranchLabel::kMinus:
      return "-";
    case BranchLabel::kSum:
      return "S";
    case BranchLabel::kInverse:
      return "I";
  }
  return "?";
}

double ConditionReport::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

RiemannPoint inversion(const RiemannPoint& z) {
  return RiemannPoint(z.beta(), z.alpha());
}

BlockUnitary product_unitary(double phi1, double phi2, double phi3, double phi4) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = phase(phi1 + phi2 - phi3);
  u(1, 1) = -s * phase(phi2);
  u(1, 2) = s * phase(phi3);
  u(2, 1) = s * phase(-(phi3 + phi4));
  u(2, 2) = s * phase(-(phi2 + phi4));
  u(3, 3) = phase(phi1);
  BlockUnitary block;
  block.kind = BlockKind::kProduct;
  block.matrix = u;
  block.phases = {phi1, phi2, phi3, phi4};
  block.branch_rules = {{2, BranchLabel::kPlus}, {1, BranchLabel::kMinus}};
  return block;
}

BlockUnitary addition_unitary(double phi1, double phi2, double phi5, double phi6) {
  const double r = std::sqrt(kGoldenReflectivity);
  const double t = std::sqrt(1.0 - kGoldenReflectivity);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = -r * phase(phi1);
  u(0, 2) = t * phase(phi2);
  u(1, 0) = t * phase(-(phi2 + phi5));
  u(1, 2) = r * phase(-(phi1 + phi5));
  u(2, 1) = -r * phase(-(phi2 + phi6));
  u(2, 3) = t * phase(-(phi1 + phi6));
  u(3, 1) = t * phase(phi1);
  u(3, 3) = r * phase(phi2);
  BlockUnitary block;
  block.kind = BlockKind::kAddition;
  block.matrix = u;
  block.phases = {phi1, phi2, phi5, phi6};
  block.branch_rules = {{2, BranchLabel::kSum}, {1, BranchLabel::kInverse}};
  return block;
}

std::vector<BranchOutcome> run_block(const BlockUnitary& block, const RiemannPoint& z1,
                                     const RiemannPoint& z2) {
  if (!is_unitary(block.matrix)) throw std::invalid_argument("block matrix is not unitary");
  std::vector<BranchOutcome> outcomes;
  outcomes.reserve(block.branch_rules.size());

  // Indeterminate targets never post-select; skip the simulator for them so
  // the conditional state is not renormalized out of 0/0.
  bool any_determinate = false;
  for (const BranchRule& rule : block.branch_rules) {
    FieldResult target = branch_target(block.kind, rule.label, z1, z2);
    if (!target.is_indeterminate()) any_determinate = true;
    outcomes.push_back({rule.label, target, 0.0});
  }

  FockVector evolved(4);
  if (any_determinate) evolved = evolve(block.matrix, dual_rail_pair(z1, z2));

  for (std::size_t i = 0; i < block.branch_rules.size(); ++i) {
    const BranchRule& rule = block.branch_rules[i];
    BranchOutcome& outcome = outcomes[i];
    if (outcome.output.is_indeterminate()) continue;

    std::vector<int> required(2, 0);
    // Complement of the output rails {0, 3} is {1, 2} in ascending order.
    required[static_cast<std::size_t>(rule.herald_mode - 1)] = 1;
    PostselectResult sel = postselect(evolved, {0, 3}, required);
    outcome.probability = sel.probability;
    if (sel.impossible) {
      outcome.output = FieldResult::indeterminate();
      continue;
    }
    const Complex a = sel.conditional.amplitude(FockState({1, 0}));
    const Complex b = sel.conditional.amplitude(FockState({0, 1}));
    if (a == Complex{0.0, 0.0} && b == Complex{0.0, 0.0})
      outcome.output = FieldResult::indeterminate();
    else
      outcome.output = FieldResult(RiemannPoint(a, b));
  }
  return outcomes;
}

double p_product(const RiemannPoint& z1, const RiemannPoint& z2) {
  const double a = std::norm(z1.alpha() * z2.alpha());
  const double b = std::norm(z1.beta() * z2.beta());
  return 0.5 * (a + b);
}

std::pair<double, double> p_addition(const RiemannPoint& z1, const RiemannPoint& z2) {
  const double sum = std::norm(z1.alpha() * z2.beta() + z2.alpha() * z1.beta());
  const double prod = std::norm(z1.alpha() * z2.alpha());
  const double unit = std::norm(z1.beta() * z2.beta());
  return {(sum + unit) / 5.0, (sum + prod) / 5.0};
}

namespace {
constexpr double kConditionZeroTol = 1e-10;
}

ConditionReport check_product_conditions(const Eigen::Matrix4cd& m) {
  auto u = [&m](int i, int j) { return m(i - 1, j - 1); };
  ConditionReport rep;
  rep.residuals = {
      std::abs(u(1, 2) * u(3, 4) + u(3, 2) * u(1, 4)),
      std::abs(u(1, 1) * u(3, 4) + u(3, 1) * u(1, 4)),
      std::abs(u(4, 1) * u(3, 4) + u(4, 4) * u(3, 1)),
      std::abs(u(1, 3) * u(3, 2) + u(1, 2) * u(3, 3)),
      std::abs(u(4, 3) * u(3, 2) + u(4, 2) * u(3, 3)),
      std::abs(u(4, 1) * u(3, 3) + u(4, 3) * u(3, 1)),
      std::abs((u(4, 2) * u(3, 4) + u(4, 4) * u(3, 2)) -
               (u(1, 1) * u(3, 3) + u(3, 1) * u(1, 3))),
  };
  rep.common_value_magnitude = std::abs(u(1, 1) * u(3, 3) + u(3, 1) * u(1, 3));
  rep.common_nonzero = rep.common_value_magnitude > kConditionZeroTol;
  return rep;
}

ConditionReport check_sum_conditions(const Eigen::Matrix4cd& m) {
  auto u = [&m](int i, int j) { return m(i - 1, j - 1); };
  const Complex a = u(4, 2) * u(3, 4) + u(4, 4) * u(3, 2);
  const Complex b = u(1, 1) * u(3, 4) + u(3, 1) * u(1, 4);
  const Complex c = u(1, 3) * u(3, 2) + u(1, 2) * u(3, 3);
  ConditionReport rep;
  rep.residuals = {
      std::abs(u(1, 2) * u(3, 4) + u(3, 2) * u(1, 4)),
      std::abs(u(4, 1) * u(3, 4) + u(4, 4) * u(3, 1)),
      std::abs(u(4, 3) * u(3, 2) + u(4, 2) * u(3, 3)),
      std::abs(u(1, 1) * u(3, 3) + u(3, 1) * u(1, 3)),
      std::abs(u(4, 1) * u(3, 3) + u(4, 3) * u(3, 1)),
      std::max({std::abs(a - b), std::abs(b - c), std::abs(a - c)}),
  };
  rep.common_value_magnitude = std::abs(a);
  rep.common_nonzero = rep.common_value_magnitude > kConditionZeroTol;
  return rep;
}

}  // namespace qqbf
