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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qqbf/blocks.hpp"
#include "qqbf/density.hpp"
#include "qqbf/presets.hpp"
#include "qqbf/riemann.hpp"

namespace qqbf {

/// Pairwise internal-state overlaps of the injected photons. The Gram
/// entries are amplitude overlaps <chi_k|chi_l>; the named indistinguishability
/// scalars C are their squared moduli, which is what a Hong-Ou-Mandel dip
/// measures.
class OverlapSpec {
 public:
  explicit OverlapSpec(Eigen::MatrixXcd gram, double tol = 1e-10);

  static OverlapSpec ideal(int photons);
  /// Two photons with squared overlap c_i.
  static OverlapSpec two_photon(double c_i);
  /// Photons 1 and 2 from the same source pair, photon 3 from the other
  /// pair. `neglect_same_pair` replaces the intra-pair overlap with 1, the
  /// approximation used for the three-photon predictions.
  static OverlapSpec three_photon(double c_same_pair, double c_cross_pair,
                                  bool neglect_same_pair = true);

  const Eigen::MatrixXcd& gram() const { return gram_; }
  int photons() const { return static_cast<int>(gram_.rows()); }
  bool is_ideal(double tol = 1e-14) const;

  double c_same_pair = 1.0;
  double c_cross_pair = 1.0;

 private:
  Eigen::MatrixXcd gram_;
};

struct NoisyOutcome {
  std::string branch;
  std::optional<QubitDensity> density;  ///< empty for probability-zero branches
  double probability = 0.0;
};

/// Product-block output state under partial indistinguishability:
/// rho = N [[|w|^2, ±w C],[±w* C, 1]] with w = z1 z2, evaluated projectively.
NoisyOutcome product_density(const RiemannPoint& z1, const RiemannPoint& z2, double c_i,
                             BranchLabel branch);

/// 1 - 2|w|^2 (1 - C)/(1 + |w|^2)^2; only the coherences decay.
double product_fidelity(const RiemannPoint& z1, const RiemannPoint& z2, double c_i);

NoisyOutcome addition_density(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                              double c_i);
NoisyOutcome harmonic_density(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                              double c_i);

double addition_fidelity(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                         double c_i);
double harmonic_fidelity(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                         double c_i);

enum class ConcatKind { kProductProduct, kSumSum, kSumProduct, kProductSum };

/// Un-normalized computational-basis diagonal of the two-block
/// concatenation output when the photons are fully distinguishable, plus
/// whether the coherences vanish identically.
struct ConcatDiagonal {
  double d11 = 0.0;
  double d22 = 0.0;
  bool off_diagonal_vanishes = false;
};

ConcatDiagonal distinguishable_concat_diagonals(ConcatKind kind, const RiemannPoint& z1,
                                                const RiemannPoint& z2,
                                                const RiemannPoint& z3, double r);

/// One dual-rail photon entering the interferometer.
struct DualRailPhoton {
  int rail0;
  int rail1;
  RiemannPoint state;
};

struct HeraldPattern {
  std::string label;
  std::vector<int> occupation;  ///< per mode, rails must carry 0
};

/// Exact partial-distinguishability simulation: each photon carries an
/// internal label with the Gram matrix of pairwise overlaps, the joint state
/// evolves through U on the spatial index alone, and the internal labels are
/// traced after post-selection. This is the independent oracle the closed
/// forms are checked against; it supports up to three photons.
std::vector<NoisyOutcome> simulate_partial(const Eigen::MatrixXcd& u,
                                           const std::vector<DualRailPhoton>& photons,
                                           const OverlapSpec& spec,
                                           std::pair<int, int> output_rails,
                                           const std::vector<HeraldPattern>& branches);

/// Preset run under the Gram-matrix noise model.
std::vector<NoisyOutcome> run_preset_noisy(const Preset& preset,
                                           const std::vector<RiemannPoint>& inputs,
                                           const OverlapSpec& spec);

/// Predicted fidelity of one preset branch against its field-algebra target.
/// Branches whose target or probability vanishes report 1.
double preset_branch_fidelity(const Preset& preset, const std::string& branch_label,
                              const std::vector<RiemannPoint>& inputs,
                              const OverlapSpec& spec);

}  // namespace qqbf
