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
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace qqbf {

using Complex = std::complex<double>;

inline constexpr double kTolUnitary = 1e-10;
inline constexpr double kTolAmp = 1e-12;

/// Photon occupation numbers, one entry per optical mode.
class FockState {
 public:
  explicit FockState(std::vector<int> occupations);

  int modes() const { return static_cast<int>(occ_.size()); }
  int photons() const;
  int operator[](int mode) const { return occ_[static_cast<std::size_t>(mode)]; }
  const std::vector<int>& occupations() const { return occ_; }

  bool operator==(const FockState& other) const { return occ_ == other.occ_; }
  bool operator<(const FockState& other) const { return occ_ < other.occ_; }

 private:
  std::vector<int> occ_;
};

/// Complex superposition over FockStates of a fixed mode count and photon
/// number. Amplitudes are kept in lexicographic order of the occupation
/// vectors so iteration is deterministic.
class FockVector {
 public:
  explicit FockVector(int modes);

  int modes() const { return modes_; }
  int photons() const;

  void add(const FockState& state, Complex amplitude);
  Complex amplitude(const FockState& state) const;
  const std::map<FockState, Complex>& amplitudes() const { return amps_; }

  double norm_squared() const;
  /// States the paper manipulates before post-selection keep this flag set.
  bool unnormalized() const { return unnormalized_; }
  void set_unnormalized(bool flag) { unnormalized_ = flag; }
  FockVector normalized() const;

 private:
  int modes_;
  std::map<FockState, Complex> amps_;
  bool unnormalized_ = false;
};

/// All occupation vectors of (modes, photons) in lexicographic order,
/// cached per pair.
class FockBasis {
 public:
  static const FockBasis& get(int modes, int photons);

  const std::vector<FockState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  std::size_t index_of(const FockState& s) const;

 private:
  FockBasis(int modes, int photons);
  std::vector<FockState> states_;
  std::map<FockState, std::size_t> index_;
};

/// Matrix permanent. Direct minor expansion up to 3x3, Ryser with Gray-code
/// row sums for 4..6. Sizes above 6 are rejected: three photons in six modes
/// never need more.
Complex permanent(const Eigen::MatrixXcd& m);

bool is_unitary(const Eigen::MatrixXcd& u, double tol = kTolUnitary);

/// Evolves a photon-number state through a linear-optical unitary acting on
/// creation operators as a_j^dag -> sum_i U_ij a_i^dag. Supports up to four
/// photons in total.
FockVector evolve(const Eigen::MatrixXcd& u, const FockVector& psi);

struct PostselectResult {
  FockVector conditional;  ///< renormalized state on the kept modes
  double probability = 0.0;
  bool impossible = false;  ///< set when no basis state matches the pattern
};

/// Conditions `psi` on detecting exactly `required` photons on the modes not
/// in `kept_modes` (given in ascending mode order).
PostselectResult postselect(const FockVector& psi, const std::vector<int>& kept_modes,
                            const std::vector<int>& required);

/// Bilinear coefficients of the heralded two-photon output of a 4x4
/// interferometer fed with one dual-rail qubit on modes (1,2) and one on
/// modes (3,4), post-selected on the second photon exiting mode 3. Entry
/// [term][rail] multiplies z1^p z2^q (term = const, z1, z2, z1z2) on the
/// surviving rail (0 -> mode 1, 1 -> mode 4).
struct TwoPhotonTable {
  enum Term { kConst = 0, kZ1 = 1, kZ2 = 2, kZ1Z2 = 3 };
  std::array<std::array<Complex, 2>, 4> coeff;
};

TwoPhotonTable two_photon_output_table(const Eigen::Matrix4cd& u);

}  // namespace qqbf
