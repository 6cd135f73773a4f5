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

#include <complex>
#include <optional>
#include <string>

#include "qqbf/random.hpp"

namespace qqbf {

using Complex = std::complex<double>;

/// A point z on the extended complex plane, stored as a normalized
/// projective amplitude pair (alpha, beta) with z = alpha/beta and
/// infinity <=> beta = 0. The canonical representative has beta real and
/// non-negative (alpha = 1 at the pole), so arithmetic never overflows and
/// z = infinity is an ordinary value.
class RiemannPoint {
 public:
  RiemannPoint(Complex alpha, Complex beta);

  static RiemannPoint from_z(Complex z) { return RiemannPoint(z, {1.0, 0.0}); }
  static RiemannPoint zero() { return RiemannPoint({0.0, 0.0}, {1.0, 0.0}); }
  static RiemannPoint one() { return RiemannPoint({1.0, 0.0}, {1.0, 0.0}); }
  static RiemannPoint infinity() { return RiemannPoint({1.0, 0.0}, {0.0, 0.0}); }

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  bool is_infinity() const { return beta_ == Complex{0.0, 0.0}; }
  bool is_zero() const { return alpha_ == Complex{0.0, 0.0}; }

  /// Finite z value; throws at the pole.
  Complex z() const;

  /// Exact equality of canonical representatives.
  bool operator==(const RiemannPoint& other) const {
    return alpha_ == other.alpha_ && beta_ == other.beta_;
  }

  std::string to_string() const;

 private:
  Complex alpha_, beta_;
};

/// Result of a field operation: either a point or the indeterminate marker.
/// Indeterminate arises exactly for 0*inf, inf+inf and the harmonic mean of
/// (0,0); it is a value, not an error, and downstream blocks read it as
/// "success probability zero".
class FieldResult {
 public:
  static FieldResult indeterminate() { return FieldResult(); }
  FieldResult(RiemannPoint p) : value_(p) {}  // NOLINT: implicit by design

  bool is_indeterminate() const { return !value_.has_value(); }
  const RiemannPoint& point() const;

  std::string to_string() const;

 private:
  FieldResult() = default;
  std::optional<RiemannPoint> value_;
};

FieldResult field_add(const RiemannPoint& z1, const RiemannPoint& z2);
FieldResult field_mul(const RiemannPoint& z1, const RiemannPoint& z2);
FieldResult field_inv(const RiemannPoint& z);
/// -z1 z2 / (z1 + z2), the addition block's alternate branch.
FieldResult field_harmonic(const RiemannPoint& z1, const RiemannPoint& z2);
FieldResult field_neg(const RiemannPoint& z);

/// z = tan(theta/2) e^{i phi}; theta = pi maps to the pole.
RiemannPoint from_bloch(double theta, double phi);

/// Inverse of from_bloch: (theta, phi) with theta in [0, pi], phi in [0, 2pi).
std::pair<double, double> to_bloch(const RiemannPoint& z);

/// Bloch-sphere-uniform sample: h uniform on (-1, 1], phi uniform on
/// [0, 2pi), z = sqrt((1-h)/(1+h)) e^{i phi}; h = -1 gives the pole.
RiemannPoint sample_haar(RandomStream& rng);

/// |<a|b>|^2 for the pure states the points parametrize.
double fidelity_pure(const RiemannPoint& a, const RiemannPoint& b);

}  // namespace qqbf
