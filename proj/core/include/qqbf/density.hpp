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

#include <Eigen/Dense>

#include "qqbf/riemann.hpp"

namespace qqbf {

/// Single-qubit density matrix in the {|0>, |1>} basis. Construction checks
/// Hermiticity, unit trace and positivity.
class QubitDensity {
 public:
  explicit QubitDensity(const Eigen::Matrix2cd& rho, double tol = 1e-9);

  static QubitDensity pure(const RiemannPoint& z);
  static QubitDensity maximally_mixed();

  const Eigen::Matrix2cd& matrix() const { return rho_; }

  std::pair<double, double> eigenvalues() const;

 private:
  Eigen::Matrix2cd rho_;
};

/// <target| rho |target>.
double fidelity_mixed(const QubitDensity& rho, const RiemannPoint& target);

}  // namespace qqbf
