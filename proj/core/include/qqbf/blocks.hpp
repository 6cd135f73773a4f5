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

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qqbf/fock.hpp"
#include "qqbf/riemann.hpp"

namespace qqbf {

/// Reflectivity that makes the addition block's multiplicative factor
/// sqrt(RT)/(R-T) equal to one.
inline const double kGoldenReflectivity = (5.0 + std::sqrt(5.0)) / 10.0;

enum class BlockKind { kProduct, kAddition };

enum class BranchLabel { kPlus, kMinus, kSum, kInverse };

std::string to_string(BranchLabel label);

/// One post-selection branch: the detected herald mode (the other herald
/// mode must be empty, the surviving photon sits on the output rails).
struct BranchRule {
  int herald_mode;  ///< 0-based mode carrying the single heralded photon
  BranchLabel label;
};

/// A four-mode, two-photon field-operation interferometer. Qubit 1 enters
/// modes (1,2) with its z amplitude on mode 1, qubit 2 enters modes (3,4)
/// with z on mode 3; the output qubit lives on modes (1,4).
struct BlockUnitary {
  BlockKind kind;
  Eigen::Matrix4cd matrix;
  std::array<double, 4> phases{};  ///< the free phases of the canonical form
  std::vector<BranchRule> branch_rules;
};

struct BranchOutcome {
  BranchLabel label;
  FieldResult output;  ///< indeterminate exactly when probability is 0
  double probability = 0.0;
};

/// The deterministic block: 1/z by swapping the two rails.
RiemannPoint inversion(const RiemannPoint& z);

/// Canonical product unitary. With all phases zero it is the identity on
/// modes 1 and 4 and [[-1,1],[1,1]]/sqrt(2) on modes 2 and 3.
BlockUnitary product_unitary(double phi1 = 0, double phi2 = 0, double phi3 = 0,
                             double phi4 = 0);

/// Canonical addition unitary: modes (1,3) and modes (2,4) each mix on an
/// unbalanced splitter with |entries|^2 in {(5±sqrt5)/10}.
BlockUnitary addition_unitary(double phi1 = 0, double phi2 = 0, double phi5 = 0,
                              double phi6 = 0);

/// Runs the two-photon Fock simulation of a block and post-selects each
/// branch. Branch outputs are pure states up to a global phase; pairs whose
/// target is indeterminate short-circuit to probability zero.
std::vector<BranchOutcome> run_block(const BlockUnitary& block, const RiemannPoint& z1,
                                     const RiemannPoint& z2);

/// Closed-form per-branch success probability of the product block,
/// (1 + |z1 z2|^2) / (2 (1+|z1|^2)(1+|z2|^2)), extended continuously to the
/// pole. Both branches are equally likely.
double p_product(const RiemannPoint& z1, const RiemannPoint& z2);

/// Closed-form success probabilities (P_S, P_I) of the addition block.
std::pair<double, double> p_addition(const RiemannPoint& z1, const RiemannPoint& z2);

/// Residuals of the seven product-design conditions. The first six must
/// vanish; the seventh is the equality of the two surviving coefficients,
/// whose common value must additionally be nonzero.
struct ConditionReport {
  std::vector<double> residuals;
  double common_value_magnitude = 0.0;
  bool common_nonzero = false;
  double max_residual() const;
};

ConditionReport check_product_conditions(const Eigen::Matrix4cd& u);

/// Residuals of the six addition-design conditions; the sixth is a three-way
/// coefficient equality.
ConditionReport check_sum_conditions(const Eigen::Matrix4cd& u);

}  // namespace qqbf
