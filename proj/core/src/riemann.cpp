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

#include "qqbf/riemann.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qqbf {

namespace {
constexpr double kPi = std::numbers::pi;
}

RiemannPoint::RiemannPoint(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  const double a2 = std::norm(alpha_);
  const double b2 = std::norm(beta_);
  if (a2 == 0.0 && b2 == 0.0)
    throw std::invalid_argument("projective pair (0, 0) is not a point");
  const double scale = 1.0 / std::sqrt(a2 + b2);
  alpha_ *= scale;
  beta_ *= scale;
  // Canonical representative: beta real >= 0, or alpha = 1 at the pole.
  if (beta_ == Complex{0.0, 0.0}) {
    alpha_ = {1.0, 0.0};
  } else {
    const Complex phase = std::conj(beta_) / std::abs(beta_);
    alpha_ *= phase;
    beta_ = {std::abs(beta_), 0.0};
  }
}

Complex RiemannPoint::z() const {
  if (is_infinity()) throw std::domain_error("z is the point at infinity");
  return alpha_ / beta_;
}

std::string RiemannPoint::to_string() const {
  if (is_infinity()) return "inf";
  std::ostringstream os;
  const Complex v = z();
  os.precision(17);
  os << v.real();
  if (v.imag() != 0.0) os << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
  return os.str();
}

const RiemannPoint& FieldResult::point() const {
  if (!value_) throw std::domain_error("indeterminate field result has no point");
  return *value_;
}

std::string FieldResult::to_string() const {
  return value_ ? value_->to_string() : "indeterminate";
}

namespace {

FieldResult make_result(Complex alpha, Complex beta) {
  if (alpha == Complex{0.0, 0.0} && beta == Complex{0.0, 0.0})
    return FieldResult::indeterminate();
  return FieldResult(RiemannPoint(alpha, beta));
}

}  // namespace

FieldResult field_add(const RiemannPoint& z1, const RiemannPoint& z2) {
  return make_result(z1.alpha() * z2.beta() + z2.alpha() * z1.beta(), z1.beta() * z2.beta());
}

FieldResult field_mul(const RiemannPoint& z1, const RiemannPoint& z2) {
  return make_result(z1.alpha() * z2.alpha(), z1.beta() * z2.beta());
}

FieldResult field_inv(const RiemannPoint& z) {
  return make_result(z.beta(), z.alpha());
}

FieldResult field_harmonic(const RiemannPoint& z1, const RiemannPoint& z2) {
  return make_result(-z1.alpha() * z2.alpha(),
                     z1.alpha() * z2.beta() + z2.alpha() * z1.beta());
}

FieldResult field_neg(const RiemannPoint& z) {
  return make_result(-z.alpha(), z.beta());
}

RiemannPoint from_bloch(double theta, double phi) {
  if (theta < 0.0 || theta > kPi) throw std::invalid_argument("theta outside [0, pi]");
  if (theta == kPi) return RiemannPoint::infinity();
  const double half = 0.5 * theta;
  return RiemannPoint(std::sin(half) * std::polar(1.0, phi), {std::cos(half), 0.0});
}

std::pair<double, double> to_bloch(const RiemannPoint& z) {
  const double theta = 2.0 * std::atan2(std::abs(z.alpha()), std::abs(z.beta()));
  double phi = std::arg(z.alpha() * std::conj(z.beta()));
  if (z.is_infinity() || z.is_zero()) phi = 0.0;
  if (phi < 0.0) phi += 2.0 * kPi;
  return {theta, phi};
}

RiemannPoint sample_haar(RandomStream& rng) {
  // h uniform on (-1, 1]: negate a [−1, 1) draw.
  const double h = -rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double a = std::sqrt(0.5 * (1.0 - h));
  const double b = std::sqrt(0.5 * (1.0 + h));
  if (b == 0.0) return RiemannPoint::infinity();
  return RiemannPoint(a * std::polar(1.0, phi), {b, 0.0});
}

double fidelity_pure(const RiemannPoint& a, const RiemannPoint& b) {
  return std::norm(a.alpha() * std::conj(b.alpha()) + a.beta() * std::conj(b.beta()));
}

}  // namespace qqbf
