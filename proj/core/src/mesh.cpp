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

#include "qqbf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qqbf/fock.hpp"

namespace qqbf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // fmod can land exactly on 2*pi after the correction
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

void embed(Eigen::MatrixXcd& u, const Eigen::Matrix2cd& b, int top) {
  const Eigen::MatrixXcd rows = u.middleRows(top, 2);
  u.middleRows(top, 2) = b * rows;
}

struct Factor {
  int top;
  double theta;
  double phi;
};

}  // namespace

std::vector<std::pair<int, int>> rectangle_positions(int modes) {
  std::vector<std::pair<int, int>> out;
  for (int layer = 1; layer <= modes; ++layer) {
    const int first = (layer % 2 == 1) ? 0 : 1;
    for (int top = first; top + 1 < modes; top += 2) out.emplace_back(layer, top);
  }
  return out;
}

void validate_layout(const MeshProgram& program) {
  if (program.modes < 2) throw std::invalid_argument("mesh needs at least two modes");
  auto expected = rectangle_positions(program.modes);
  std::set<std::pair<int, int>> want(expected.begin(), expected.end());
  std::set<std::pair<int, int>> have;
  for (const MziSetting& node : program.nodes) have.emplace(node.layer, node.top_mode);
  if (have != want || program.nodes.size() != expected.size())
    throw std::invalid_argument("mesh nodes do not tile the rectangular layout");
  for (const auto* phases : {&program.input_phases, &program.output_phases}) {
    if (!phases->empty() && static_cast<int>(phases->size()) != program.modes)
      throw std::invalid_argument("phase layer size does not match mode count");
  }
}

Eigen::Matrix2cd mzi_matrix(double theta, double phi) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const Complex g = Complex{0.0, 1.0} * std::polar(1.0, 0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  Eigen::Matrix2cd b;
  b << g * s * e, g * c * e, g * c, -g * s;
  return b;
}

Eigen::Matrix2cd projector_matrix(double theta, double phi) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const Complex g = Complex{0.0, 1.0} * std::polar(1.0, 0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  Eigen::Matrix2cd b;
  b << g * s * e, g * c, g * c * e, -g * s;
  return b;
}

Eigen::MatrixXcd compose(const MeshProgram& program) {
  validate_layout(program);
  const int m = program.modes;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  if (!program.input_phases.empty())
    for (int i = 0; i < m; ++i) u.row(i) *= std::polar(1.0, program.input_phases[i]);

  std::vector<MziSetting> nodes = program.nodes;
  std::sort(nodes.begin(), nodes.end(), [](const MziSetting& a, const MziSetting& b) {
    return std::tie(a.layer, a.top_mode) < std::tie(b.layer, b.top_mode);
  });
  for (const MziSetting& node : nodes) embed(u, mzi_matrix(node.theta, node.phi), node.top_mode);

  if (!program.output_phases.empty())
    for (int i = 0; i < m; ++i) u.row(i) *= std::polar(1.0, program.output_phases[i]);
  return u;
}

double recompose_residual(const MeshProgram& program, const Eigen::MatrixXcd& u) {
  return (compose(program) - u).norm();
}

MeshProgram decompose(const Eigen::MatrixXcd& u_in) {
  const int m = static_cast<int>(u_in.rows());
  if (u_in.cols() != m) throw std::invalid_argument("decompose needs a square matrix");
  if (!is_unitary(u_in)) throw std::invalid_argument("decompose needs a unitary matrix");

  Eigen::MatrixXcd x = u_in;
  std::vector<Factor> left_factors;   // collected as valid nodes, output side
  std::vector<Factor> right_factors;  // appear inverted, converted below

  auto right_null = [&x](int row, int p) -> Factor {
    // X <- X * E(B); kills X(row, p) against X(row, p+1).
    const Complex xp = x(row, p);
    const Complex xq = x(row, p + 1);
    double theta;
    double phi;
    if (std::abs(xp) == 0.0) {
      theta = std::numbers::pi;
      phi = std::numbers::pi;  // identity node, nothing to do
    } else {
      theta = 2.0 * std::atan2(std::abs(xq), std::abs(xp));
      phi = (std::abs(xq) == 0.0) ? 0.0 : std::arg(-xq / xp);
    }
    const Eigen::MatrixXcd cols = x.middleCols(p, 2);
    x.middleCols(p, 2) = cols * mzi_matrix(theta, phi);
    return {p, theta, phi};
  };

  auto left_null = [&x](int p, int col) -> Factor {
    // X <- E(B)^{-1} * X; kills X(p+1, col) against X(p, col).
    const Complex xp = x(p, col);
    const Complex xq = x(p + 1, col);
    double theta;
    double phi;
    if (std::abs(xq) == 0.0) {
      theta = std::numbers::pi;
      phi = std::numbers::pi;
    } else {
      theta = 2.0 * std::atan2(std::abs(xp), std::abs(xq));
      phi = (std::abs(xp) == 0.0) ? 0.0 : std::arg(xp / xq);
    }
    const Eigen::Matrix2cd binv = mzi_matrix(theta, phi).inverse();
    const Eigen::MatrixXcd rows = x.middleRows(p, 2);
    x.middleRows(p, 2) = binv * rows;
    return {p, theta, phi};
  };

  for (int k = 0; k < m - 1; ++k) {
    if (k % 2 == 0) {
      for (int i = 0; i <= k; ++i) right_factors.push_back(right_null(m - 1 - i, k - i));
    } else {
      for (int i = 0; i <= k; ++i) left_factors.push_back(left_null(m - 2 - k + i, i));
    }
  }

  // X is now diagonal: U = L_1..L_J * Diag * B_K^{-1}..B_1^{-1}. Slide the
  // diagonal to the input end, converting every inverted factor into a
  // regular node: diag(a,b) B(t,f)^{-1} = B(t, arg(a/b)) diag(-e^{-i(t+f)}b,
  // -e^{-i t}b).
  Eigen::VectorXcd diag(m);
  for (int i = 0; i < m; ++i) {
    const Complex d = x(i, i);
    diag(i) = (std::abs(d) > 0.0) ? d / std::abs(d) : Complex{1.0, 0.0};
  }

  std::vector<Factor> converted;
  converted.reserve(right_factors.size());
  for (auto it = right_factors.rbegin(); it != right_factors.rend(); ++it) {
    const Factor& f = *it;
    const Complex a = diag(f.top);
    const Complex b = diag(f.top + 1);
    const double phi_new = std::arg(a / b);
    diag(f.top) = -std::polar(1.0, -(f.theta + f.phi)) * b;
    diag(f.top + 1) = -std::polar(1.0, -f.theta) * b;
    converted.push_back({f.top, f.theta, phi_new});
  }

  // Pack the factor sequence (output side first) into rectangle layers.
  std::vector<Factor> sequence = left_factors;
  sequence.insert(sequence.end(), converted.begin(), converted.end());

  MeshProgram program;
  program.modes = m;
  std::vector<int> avail(static_cast<std::size_t>(m), m + 1);
  for (const Factor& f : sequence) {
    int layer = std::min(avail[static_cast<std::size_t>(f.top)],
                         avail[static_cast<std::size_t>(f.top + 1)]) -
                1;
    const bool want_odd_layer = (f.top % 2 == 0);
    if ((layer % 2 == 1) != want_odd_layer) --layer;
    if (layer < 1) throw std::logic_error("mesh factor packing failed");
    avail[static_cast<std::size_t>(f.top)] = layer;
    avail[static_cast<std::size_t>(f.top + 1)] = layer;
    program.nodes.push_back({layer, f.top, wrap_angle(f.theta), wrap_angle(f.phi)});
  }

  program.input_phases.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) program.input_phases[static_cast<std::size_t>(i)] = std::arg(diag(i));

  validate_layout(program);
  return program;
}

std::pair<double, double> prepare_settings(const RiemannPoint& z) {
  const double theta = 2.0 * std::atan2(std::abs(z.alpha()), std::abs(z.beta()));
  double phi = (z.is_zero() || z.is_infinity()) ? 0.0 : std::arg(z.alpha() * std::conj(z.beta()));
  return {wrap_angle(theta), wrap_angle(phi)};
}

std::pair<double, double> projector_settings(const RiemannPoint& target) {
  const double theta = 2.0 * std::atan2(std::abs(target.alpha()), std::abs(target.beta()));
  double phi =
      (target.is_zero() || target.is_infinity()) ? 0.0 : -std::arg(target.alpha() * std::conj(target.beta()));
  return {wrap_angle(theta), wrap_angle(phi)};
}

}  // namespace qqbf
