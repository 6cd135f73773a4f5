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

#include "qqbf/density.hpp"

#include <cmath>
#include <stdexcept>

namespace qqbf {

QubitDensity::QubitDensity(const Eigen::Matrix2cd& rho, double tol) : rho_(rho) {
  if (std::abs(rho(0, 1) - std::conj(rho(1, 0))) > tol ||
      std::abs(rho(0, 0).imag()) > tol || std::abs(rho(1, 1).imag()) > tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > tol)
    throw std::invalid_argument("density matrix trace is not 1");
  // Symmetrize the tolerated numerical skew before the eigenvalue check.
  rho_(0, 0) = Complex{rho(0, 0).real(), 0.0};
  rho_(1, 1) = Complex{rho(1, 1).real(), 0.0};
  rho_(1, 0) = std::conj(rho_(0, 1));
  auto [lo, hi] = eigenvalues();
  (void)hi;
  if (lo < -tol) throw std::invalid_argument("density matrix has a negative eigenvalue");
}

QubitDensity QubitDensity::pure(const RiemannPoint& z) {
  Eigen::Vector2cd v;
  v << z.alpha(), z.beta();
  return QubitDensity(v * v.adjoint());
}

QubitDensity QubitDensity::maximally_mixed() {
  return QubitDensity(0.5 * Eigen::Matrix2cd::Identity());
}

std::pair<double, double> QubitDensity::eigenvalues() const {
  const double t = rho_.trace().real();
  const double d = (rho_(0, 0) * rho_(1, 1) - rho_(0, 1) * rho_(1, 0)).real();
  const double disc = std::sqrt(std::max(0.25 * t * t - d, 0.0));
  return {0.5 * t - disc, 0.5 * t + disc};
}

double fidelity_mixed(const QubitDensity& rho, const RiemannPoint& target) {
  Eigen::Vector2cd t;
  t << target.alpha(), target.beta();
  return (t.adjoint() * rho.matrix() * t)(0, 0).real();
}

}  // namespace qqbf
