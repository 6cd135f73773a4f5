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

#include "qqbf/noise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qqbf/fock.hpp"

namespace qqbf {

namespace {

constexpr double kGramTol = 1e-10;

void check_c(double c_i) {
  if (c_i < 0.0 || c_i > 1.0) throw std::invalid_argument("overlap C must lie in [0, 1]");
}

void check_r(double r) {
  if (r <= 0.0 || r >= 1.0) throw std::invalid_argument("reflectivity must lie in (0, 1)");
}

}  // namespace

OverlapSpec::OverlapSpec(Eigen::MatrixXcd gram, double tol) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("gram matrix must be square");
  const int n = static_cast<int>(gram_.rows());
  if (n < 1 || n > 3) throw std::invalid_argument("supported photon counts are 1..3");
  for (int i = 0; i < n; ++i) {
    if (std::abs(gram_(i, i) - Complex{1.0, 0.0}) > tol)
      throw std::invalid_argument("gram diagonal must be 1");
    for (int j = 0; j < n; ++j) {
      if (std::abs(gram_(i, j) - std::conj(gram_(j, i))) > tol)
        throw std::invalid_argument("gram matrix must be Hermitian");
      if (std::abs(gram_(i, j)) > 1.0 + tol)
        throw std::invalid_argument("gram entries are amplitude overlaps, |g| <= 1");
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram_);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("gram matrix must be positive semidefinite");
}

OverlapSpec OverlapSpec::ideal(int photons) {
  return OverlapSpec(Eigen::MatrixXcd::Ones(photons, photons));
}

OverlapSpec OverlapSpec::two_photon(double c_i) {
  check_c(c_i);
  Eigen::MatrixXcd g(2, 2);
  const double amp = std::sqrt(c_i);
  g << 1.0, amp, amp, 1.0;
  OverlapSpec spec(std::move(g));
  spec.c_same_pair = c_i;
  return spec;
}

OverlapSpec OverlapSpec::three_photon(double c_same_pair, double c_cross_pair,
                                      bool neglect_same_pair) {
  check_c(c_same_pair);
  check_c(c_cross_pair);
  const double same = neglect_same_pair ? 1.0 : std::sqrt(c_same_pair);
  const double cross = std::sqrt(c_cross_pair);
  Eigen::MatrixXcd g(3, 3);
  g << 1.0, same, cross, same, 1.0, cross, cross, cross, 1.0;
  OverlapSpec spec(std::move(g));
  spec.c_same_pair = c_same_pair;
  spec.c_cross_pair = c_cross_pair;
  return spec;
}

bool OverlapSpec::is_ideal(double tol) const {
  return (gram_ - Eigen::MatrixXcd::Ones(gram_.rows(), gram_.cols())).cwiseAbs().maxCoeff() <
         tol;
}

NoisyOutcome product_density(const RiemannPoint& z1, const RiemannPoint& z2, double c_i,
                             BranchLabel branch) {
  check_c(c_i);
  if (branch != BranchLabel::kPlus && branch != BranchLabel::kMinus)
    throw std::invalid_argument("product branches are + and -");
  const double sign = (branch == BranchLabel::kPlus) ? 1.0 : -1.0;
  NoisyOutcome out;
  out.branch = to_string(branch);
  out.probability = p_product(z1, z2);

  const FieldResult w = field_mul(z1, z2);
  if (w.is_indeterminate()) {
    out.probability = 0.0;
    return out;
  }
  const Complex a = w.point().alpha();
  const Complex b = w.point().beta();
  Eigen::Matrix2cd rho;
  rho << std::norm(a), sign * a * std::conj(b) * c_i, sign * std::conj(a) * b * c_i,
      std::norm(b);
  out.density = QubitDensity(rho);
  return out;
}

double product_fidelity(const RiemannPoint& z1, const RiemannPoint& z2, double c_i) {
  check_c(c_i);
  const FieldResult w = field_mul(z1, z2);
  if (w.is_indeterminate()) return 1.0;
  const double p = std::norm(w.point().alpha()) * std::norm(w.point().beta());
  return 1.0 - 2.0 * p * (1.0 - c_i);
}

namespace {

/// Homogeneous building blocks of the addition closed forms, evaluated on
/// the normalized projective pairs so the pole needs no special casing.
struct SumTerms {
  Complex s;    ///< alpha1 beta2 + alpha2 beta1  ("z1 + z2")
  Complex w;    ///< alpha1 alpha2                ("z1 z2")
  Complex u;    ///< beta1 beta2                  ("1")
  Complex q;    ///< alpha1 conj(beta1) conj(alpha2) beta2  ("z1 conj(z2)")
  Complex mix;  ///< R alpha1 beta2 + T alpha2 beta1        ("R z1 + T z2")
  Complex lo;   ///< T alpha2 beta1 - R alpha1 beta2        ("T z2 - R z1")
  Complex hi;   ///< |alpha1|^2 alpha2 conj(beta2) + alpha1 conj(beta1) |alpha2|^2
  Complex hic;  ///< R |alpha1|^2 alpha2 conj(beta2) - T alpha1 conj(beta1) |alpha2|^2
};

SumTerms sum_terms(const RiemannPoint& z1, const RiemannPoint& z2, double r) {
  const double t = 1.0 - r;
  const Complex a1 = z1.alpha(), b1 = z1.beta();
  const Complex a2 = z2.alpha(), b2 = z2.beta();
  SumTerms terms;
  terms.s = a1 * b2 + a2 * b1;
  terms.w = a1 * a2;
  terms.u = b1 * b2;
  terms.q = a1 * std::conj(b1) * std::conj(a2) * b2;
  terms.mix = r * a1 * b2 + t * a2 * b1;
  terms.lo = t * a2 * b1 - r * a1 * b2;
  terms.hi = std::norm(a1) * a2 * std::conj(b2) + a1 * std::conj(b1) * std::norm(a2);
  terms.hic = r * std::norm(a1) * a2 * std::conj(b2) - t * a1 * std::conj(b1) * std::norm(a2);
  return terms;
}

}  // namespace

NoisyOutcome addition_density(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                              double c_i) {
  check_r(r);
  check_c(c_i);
  const double t = 1.0 - r;
  const double rt = r * t;
  const double srt = std::sqrt(rt);
  const double dc = 1.0 - c_i;
  const SumTerms k = sum_terms(z1, z2, r);

  Eigen::Matrix2cd m;
  m(0, 0) = rt * std::norm(k.s) - rt * 2.0 * k.q.real() * dc;
  m(0, 1) = srt * (r - t) * k.s * std::conj(k.u) + srt * k.lo * std::conj(k.u) * dc;
  m(1, 0) = std::conj(m(0, 1));
  m(1, 1) = ((r - t) * (r - t) + 2.0 * rt * dc) * std::norm(k.u);

  NoisyOutcome out;
  out.branch = to_string(BranchLabel::kSum);
  const double trace = m(0, 0).real() + m(1, 1).real();
  out.probability = trace;
  if (trace <= 0.0) {
    out.probability = 0.0;
    return out;
  }
  out.density = QubitDensity(m / trace);
  return out;
}

NoisyOutcome harmonic_density(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                              double c_i) {
  check_r(r);
  check_c(c_i);
  const double t = 1.0 - r;
  const double rt = r * t;
  const double srt = std::sqrt(rt);
  const double dc = 1.0 - c_i;
  const SumTerms k = sum_terms(z1, z2, r);

  Eigen::Matrix2cd m;
  m(0, 0) = std::norm(k.w) * ((r - t) * (r - t) + 2.0 * rt * dc);
  m(0, 1) = srt * (t - r) * k.hi + srt * k.hic * dc;
  m(1, 0) = std::conj(m(0, 1));
  m(1, 1) = rt * std::norm(k.s) - rt * 2.0 * k.q.real() * dc;

  NoisyOutcome out;
  out.branch = to_string(BranchLabel::kInverse);
  const double trace = m(0, 0).real() + m(1, 1).real();
  out.probability = trace;
  if (trace <= 0.0) {
    out.probability = 0.0;
    return out;
  }
  out.density = QubitDensity(m / trace);
  return out;
}

double addition_fidelity(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                         double c_i) {
  check_r(r);
  check_c(c_i);
  const double t = 1.0 - r;
  const double rt = r * t;
  const double dc = 1.0 - c_i;
  const SumTerms k = sum_terms(z1, z2, r);
  const double num = 2.0 * rt * std::norm(k.mix) * dc;
  if (num == 0.0) return 1.0;
  const double d1 = rt * std::norm(k.s) + (r - t) * (r - t) * std::norm(k.u) +
                    rt * (2.0 * std::norm(k.u) - 2.0 * k.q.real()) * dc;
  const double d2 = rt * std::norm(k.s) + (r - t) * (r - t) * std::norm(k.u);
  return 1.0 - num / (d1 * d2);
}

double harmonic_fidelity(const RiemannPoint& z1, const RiemannPoint& z2, double r,
                         double c_i) {
  check_r(r);
  check_c(c_i);
  const double t = 1.0 - r;
  const double rt = r * t;
  const double dc = 1.0 - c_i;
  const SumTerms k = sum_terms(z1, z2, r);
  const double num = 2.0 * rt * std::norm(k.mix) * std::norm(k.w) * dc;
  if (num == 0.0) return 1.0;
  const double d1 = std::norm(k.w) * (r - t) * (r - t) + rt * std::norm(k.s) +
                    rt * (2.0 * std::norm(k.w) - 2.0 * k.q.real()) * dc;
  const double d2 = std::norm(k.w) * (r - t) * (r - t) + rt * std::norm(k.s);
  return 1.0 - num / (d1 * d2);
}

ConcatDiagonal distinguishable_concat_diagonals(ConcatKind kind, const RiemannPoint& z1,
                                                const RiemannPoint& z2,
                                                const RiemannPoint& z3, double r) {
  check_r(r);
  const double t = 1.0 - r;
  const double rt = r * t;
  const double r2t2 = r * r + t * t;
  // Squared moduli from the normalized pairs; the shared |beta|^2 factors
  // cancel in the d11/d22 ratio, which is the observable quantity.
  const double m1 = std::norm(z1.alpha()), n1 = std::norm(z1.beta());
  const double m2 = std::norm(z2.alpha()), n2 = std::norm(z2.beta());
  const double m3 = std::norm(z3.alpha()), n3 = std::norm(z3.beta());
  ConcatDiagonal out;
  switch (kind) {
    case ConcatKind::kProductProduct:
      out.d11 = m1 * m2 * m3;
      out.d22 = n1 * n2 * n3;
      out.off_diagonal_vanishes = true;
      break;
    case ConcatKind::kSumSum:
      out.d11 = (rt * rt / (r2t2 * r2t2)) * (m1 * n2 + m2 * n1) * n3 +
                (rt / r2t2) * m3 * n1 * n2;
      out.d22 = n1 * n2 * n3;
      out.off_diagonal_vanishes = false;
      break;
    case ConcatKind::kSumProduct:
      out.d11 = (rt / r2t2) * (m1 * n2 + m2 * n1) * m3;
      out.d22 = n1 * n2 * n3;
      out.off_diagonal_vanishes = true;
      break;
    case ConcatKind::kProductSum:
      out.d11 = (rt / r2t2) * (m1 * m2 * n3 + m3 * n1 * n2);
      out.d22 = n1 * n2 * n3;
      out.off_diagonal_vanishes = false;
      break;
  }
  return out;
}

std::vector<NoisyOutcome> simulate_partial(const Eigen::MatrixXcd& u,
                                           const std::vector<DualRailPhoton>& photons,
                                           const OverlapSpec& spec,
                                           std::pair<int, int> output_rails,
                                           const std::vector<HeraldPattern>& branches) {
  const int m = static_cast<int>(u.rows());
  const int n = static_cast<int>(photons.size());
  if (u.cols() != m) throw std::invalid_argument("unitary must be square");
  if (n < 1 || n > 3) throw std::invalid_argument("supported photon counts are 1..3");
  if (spec.photons() != n) throw std::invalid_argument("gram size does not match photons");

  // Internal-state coefficient vectors from the Gram factorization,
  // truncated to the numerical rank.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(spec.gram());
  std::vector<int> modes_kept;
  for (int d = 0; d < n; ++d)
    if (es.eigenvalues()(d) > kGramTol) modes_kept.push_back(d);
  const int dim = static_cast<int>(modes_kept.size());
  Eigen::MatrixXcd chi(n, dim);  // chi(k, d): photon k amplitude on internal d
  for (int k = 0; k < n; ++k)
    for (int d = 0; d < dim; ++d)
      chi(k, d) = std::conj(es.eigenvectors()(k, modes_kept[static_cast<std::size_t>(d)]) *
                            std::sqrt(es.eigenvalues()(modes_kept[static_cast<std::size_t>(d)])));

  // Composite (spatial, internal) single-photon space and U (x) identity.
  const int cm = m * dim;
  Eigen::MatrixXcd u_comp = Eigen::MatrixXcd::Zero(cm, cm);
  for (int s = 0; s < m; ++s)
    for (int s2 = 0; s2 < m; ++s2)
      for (int d = 0; d < dim; ++d) u_comp(s * dim + d, s2 * dim + d) = u(s, s2);

  // Product input state over composite modes.
  struct Monomial {
    std::vector<int> occ;
    Complex coeff;
  };
  std::vector<Monomial> terms = {
      {std::vector<int>(static_cast<std::size_t>(cm), 0), Complex{1.0, 0.0}}};
  for (int k = 0; k < n; ++k) {
    std::vector<std::pair<int, Complex>> routes;
    for (int d = 0; d < dim; ++d) {
      if (std::abs(chi(k, d)) == 0.0) continue;
      routes.emplace_back(photons[k].rail0 * dim + d, photons[k].state.alpha() * chi(k, d));
      routes.emplace_back(photons[k].rail1 * dim + d, photons[k].state.beta() * chi(k, d));
    }
    std::vector<Monomial> next;
    next.reserve(terms.size() * routes.size());
    for (const Monomial& term : terms) {
      for (const auto& [mode, amp] : routes) {
        if (amp == Complex{0.0, 0.0}) continue;
        Monomial t = term;
        t.occ[static_cast<std::size_t>(mode)] += 1;
        t.coeff *= amp;
        next.push_back(std::move(t));
      }
    }
    terms = std::move(next);
  }
  FockVector psi(cm);
  {
    std::map<std::vector<int>, Complex> acc;
    for (const Monomial& t : terms) acc[t.occ] += t.coeff;
    for (const auto& [occ, coeff] : acc) {
      double fac = 1.0;
      for (int c : occ)
        for (int i = 2; i <= c; ++i) fac *= i;
      psi.add(FockState(occ), coeff * std::sqrt(fac));
    }
  }

  const FockVector evolved = evolve(u_comp, psi);

  const auto [r0, r1] = output_rails;
  std::vector<NoisyOutcome> outcomes;
  outcomes.reserve(branches.size());
  for (const HeraldPattern& branch : branches) {
    if (static_cast<int>(branch.occupation.size()) != m)
      throw std::invalid_argument("herald pattern size does not match mode count");
    // rho_ab = sum over matching herald/internal configurations of
    // psi_a(cfg) conj(psi_b(cfg)).
    std::map<std::vector<int>, std::array<Complex, 2>> slots;
    for (const auto& [state, amp] : evolved.amplitudes()) {
      std::vector<int> spatial(static_cast<std::size_t>(m), 0);
      for (int c = 0; c < cm; ++c) spatial[static_cast<std::size_t>(c / dim)] += state[c];
      bool match = spatial[static_cast<std::size_t>(r0)] +
                       spatial[static_cast<std::size_t>(r1)] ==
                   1;
      for (int s = 0; s < m && match; ++s) {
        if (s == r0 || s == r1) continue;
        if (spatial[static_cast<std::size_t>(s)] != branch.occupation[static_cast<std::size_t>(s)])
          match = false;
      }
      if (!match) continue;
      const int rail = spatial[static_cast<std::size_t>(r0)] == 1 ? 0 : 1;
      const int rail_mode = rail == 0 ? r0 : r1;
      // Key: configuration with the rail photon moved to a reserved slot so
      // its internal label is traced out only against the same label.
      std::vector<int> key = state.occupations();
      int rail_internal = -1;
      for (int d = 0; d < dim; ++d) {
        if (key[static_cast<std::size_t>(rail_mode * dim + d)] > 0) {
          rail_internal = d;
          break;
        }
      }
      key[static_cast<std::size_t>(rail_mode * dim + rail_internal)] -= 1;
      key.push_back(rail_internal);
      slots[key][static_cast<std::size_t>(rail)] += amp;
    }
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (const auto& [key, pair] : slots) {
      rho(0, 0) += pair[0] * std::conj(pair[0]);
      rho(0, 1) += pair[0] * std::conj(pair[1]);
      rho(1, 0) += pair[1] * std::conj(pair[0]);
      rho(1, 1) += pair[1] * std::conj(pair[1]);
    }
    NoisyOutcome out;
    out.branch = branch.label;
    const double trace = rho.trace().real();
    out.probability = std::max(trace, 0.0);
    if (trace > 1e-14) out.density = QubitDensity(rho / trace);
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

std::vector<NoisyOutcome> run_preset_noisy(const Preset& preset,
                                           const std::vector<RiemannPoint>& inputs,
                                           const OverlapSpec& spec) {
  if (inputs.size() != preset.input_rails.size())
    throw std::invalid_argument("input count does not match the preset");
  std::vector<DualRailPhoton> photons;
  photons.reserve(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k)
    photons.push_back({preset.input_rails[k].first, preset.input_rails[k].second, inputs[k]});
  std::vector<HeraldPattern> patterns;
  patterns.reserve(preset.branches.size());
  for (const PresetBranch& branch : preset.branches)
    patterns.push_back({branch.label, branch.herald_occupation});
  return simulate_partial(compose(preset.program), photons, spec, preset.output_rails,
                          patterns);
}

double preset_branch_fidelity(const Preset& preset, const std::string& branch_label,
                              const std::vector<RiemannPoint>& inputs,
                              const OverlapSpec& spec) {
  const PresetBranch* branch = nullptr;
  for (const PresetBranch& b : preset.branches)
    if (b.label == branch_label) branch = &b;
  if (branch == nullptr) throw std::invalid_argument("unknown branch " + branch_label);
  const FieldResult target = branch->expected(inputs);
  if (target.is_indeterminate()) return 1.0;
  const std::vector<NoisyOutcome> outcomes = run_preset_noisy(preset, inputs, spec);
  for (const NoisyOutcome& out : outcomes) {
    if (out.branch != branch_label) continue;
    if (!out.density.has_value()) return 1.0;
    return fidelity_mixed(*out.density, target.point());
  }
  throw std::logic_error("branch missing from preset run");
}

}  // namespace qqbf
