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

#include "qqbf/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace qqbf {

namespace {

constexpr int kMaxPhotons = 4;
constexpr int kMaxPermanent = 6;

double factorial(int n) {
  static const std::array<double, 7> table = {1, 1, 2, 6, 24, 120, 720};
  return table[static_cast<std::size_t>(n)];
}

}  // namespace

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
  if (occ_.empty()) throw std::invalid_argument("FockState needs at least one mode");
  for (int n : occ_) {
    if (n < 0) throw std::invalid_argument("negative photon occupation");
  }
}

int FockState::photons() const { return std::accumulate(occ_.begin(), occ_.end(), 0); }

FockVector::FockVector(int modes) : modes_(modes) {
  if (modes <= 0) throw std::invalid_argument("mode count must be positive");
}

int FockVector::photons() const {
  if (amps_.empty()) return 0;
  return amps_.begin()->first.photons();
}

void FockVector::add(const FockState& state, Complex amplitude) {
  if (state.modes() != modes_) throw std::invalid_argument("mode count mismatch");
  if (!amps_.empty() && state.photons() != photons())
    throw std::invalid_argument("photon number mismatch within FockVector");
  auto [it, inserted] = amps_.try_emplace(state, amplitude);
  if (!inserted) it->second += amplitude;
  if (std::abs(it->second) == 0.0) amps_.erase(it);
}

Complex FockVector::amplitude(const FockState& state) const {
  auto it = amps_.find(state);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double FockVector::norm_squared() const {
  double n2 = 0.0;
  for (const auto& [state, amp] : amps_) n2 += std::norm(amp);
  return n2;
}

FockVector FockVector::normalized() const {
  const double n2 = norm_squared();
  if (n2 <= 0.0) throw std::domain_error("cannot normalize a null FockVector");
  FockVector out(modes_);
  const double scale = 1.0 / std::sqrt(n2);
  for (const auto& [state, amp] : amps_) out.add(state, amp * scale);
  out.set_unnormalized(false);
  return out;
}

FockBasis::FockBasis(int modes, int photons) {
  // Lexicographic enumeration of occupation vectors summing to `photons`.
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  auto recurse = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == modes - 1) {
      occ[static_cast<std::size_t>(mode)] = remaining;
      states_.emplace_back(occ);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      occ[static_cast<std::size_t>(mode)] = n;
      self(self, mode + 1, remaining - n);
    }
  };
  recurse(recurse, 0, photons);
  for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = i;
}

const FockBasis& FockBasis::get(int modes, int photons) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<FockBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(modes, photons);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<FockBasis>(new FockBasis(modes, photons))).first;
  return *it->second;
}

std::size_t FockBasis::index_of(const FockState& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw std::invalid_argument("state not in basis");
  return it->second;
}

Complex permanent(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("permanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n > kMaxPermanent) throw std::invalid_argument("permanent capped at 6x6");
  switch (n) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) + m(1, 2) * m(2, 1)) +
             m(0, 1) * (m(1, 0) * m(2, 2) + m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) + m(1, 1) * m(2, 0));
    default:
      break;
  }
  // Ryser with Gray-code updates of the running row sums.
  std::vector<Complex> rowsum(static_cast<std::size_t>(n), Complex{0.0, 0.0});
  Complex total{0.0, 0.0};
  unsigned prev = 0;
  const unsigned count = 1u << n;
  for (unsigned k = 1; k < count; ++k) {
    const unsigned gray = k ^ (k >> 1);
    const unsigned changed = gray ^ prev;
    const int col = std::countr_zero(changed);
    const double sign_col = (gray & changed) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) rowsum[static_cast<std::size_t>(i)] += sign_col * m(i, col);
    Complex prod{1.0, 0.0};
    for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    const double parity = (std::popcount(gray) % 2 == 0) ? 1.0 : -1.0;
    total += parity * prod;
    prev = gray;
  }
  const double overall = (n % 2 == 0) ? 1.0 : -1.0;
  return overall * total;
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Eigen::MatrixXcd delta = u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return delta.cwiseAbs().maxCoeff() < tol;
}

FockVector evolve(const Eigen::MatrixXcd& u, const FockVector& psi) {
  const int m = psi.modes();
  if (u.rows() != m || u.cols() != m)
    throw std::invalid_argument("unitary dimension does not match mode count");
  const int n = psi.photons();
  if (n > kMaxPhotons) throw std::invalid_argument("photon number above supported bound");
  FockVector out(m);
  out.set_unnormalized(psi.unnormalized());
  if (psi.amplitudes().empty()) return out;

  const FockBasis& basis = FockBasis::get(m, n);

  // Column indices repeated by the input occupations, per input state.
  std::vector<std::pair<const FockState*, std::pair<Complex, std::vector<int>>>> inputs;
  for (const auto& [state, amp] : psi.amplitudes()) {
    std::vector<int> cols;
    cols.reserve(static_cast<std::size_t>(n));
    double fac = 1.0;
    for (int j = 0; j < m; ++j) {
      fac *= factorial(state[j]);
      for (int c = 0; c < state[j]; ++c) cols.push_back(j);
    }
    inputs.push_back({&state, {amp / std::sqrt(fac), cols}});
  }

  Eigen::MatrixXcd sub(n, n);
  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (const FockState& target : basis.states()) {
    rows.clear();
    double fac_t = 1.0;
    for (int i = 0; i < m; ++i) {
      fac_t *= factorial(target[i]);
      for (int c = 0; c < target[i]; ++c) rows.push_back(i);
    }
    Complex acc{0.0, 0.0};
    for (const auto& [state, payload] : inputs) {
      const auto& [scaled_amp, cols] = payload;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          sub(r, c) = u(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
      acc += scaled_amp * permanent(sub);
    }
    acc /= std::sqrt(fac_t);
    if (std::abs(acc) > 0.0) out.add(target, acc);
  }
  return out;
}

PostselectResult postselect(const FockVector& psi, const std::vector<int>& kept_modes,
                            const std::vector<int>& required) {
  const int m = psi.modes();
  std::vector<bool> kept(static_cast<std::size_t>(m), false);
  for (int mode : kept_modes) {
    if (mode < 0 || mode >= m) throw std::invalid_argument("kept mode out of range");
    if (kept[static_cast<std::size_t>(mode)])
      throw std::invalid_argument("duplicate kept mode");
    kept[static_cast<std::size_t>(mode)] = true;
  }
  std::vector<int> complement;
  for (int mode = 0; mode < m; ++mode)
    if (!kept[static_cast<std::size_t>(mode)]) complement.push_back(mode);
  if (complement.size() != required.size())
    throw std::invalid_argument("required pattern does not cover the complement modes");

  const int kept_count = static_cast<int>(kept_modes.size());
  FockVector conditional(std::max(kept_count, 1));
  double probability = 0.0;
  std::vector<int> sorted_kept = kept_modes;
  std::sort(sorted_kept.begin(), sorted_kept.end());

  std::map<FockState, Complex> matched;
  for (const auto& [state, amp] : psi.amplitudes()) {
    bool match = true;
    for (std::size_t i = 0; i < complement.size(); ++i) {
      if (state[complement[i]] != required[i]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    probability += std::norm(amp);
    std::vector<int> sub;
    sub.reserve(sorted_kept.size());
    for (int mode : sorted_kept) sub.push_back(state[mode]);
    matched[FockState(sub)] += amp;
  }

  PostselectResult result{std::move(conditional), probability, false};
  if (probability <= 0.0) {
    result.impossible = true;
    return result;
  }
  const double scale = 1.0 / std::sqrt(probability);
  for (const auto& [state, amp] : matched) result.conditional.add(state, amp * scale);
  return result;
}

TwoPhotonTable two_photon_output_table(const Eigen::Matrix4cd& u) {
  // Coefficients of the heralded expansion, written with 1-based entries
  // u(i,j) exactly as the amplitude products appear term by term.
  auto e = [&u](int i, int j) { return u(i - 1, j - 1); };
  TwoPhotonTable t;
  t.coeff[TwoPhotonTable::kConst] = {e(1, 2) * e(3, 4) + e(3, 2) * e(1, 4),
                                     e(4, 2) * e(3, 4) + e(4, 4) * e(3, 2)};
  t.coeff[TwoPhotonTable::kZ1] = {e(1, 1) * e(3, 4) + e(3, 1) * e(1, 4),
                                  e(4, 1) * e(3, 4) + e(4, 4) * e(3, 1)};
  t.coeff[TwoPhotonTable::kZ2] = {e(1, 3) * e(3, 2) + e(1, 2) * e(3, 3),
                                  e(4, 3) * e(3, 2) + e(4, 2) * e(3, 3)};
  t.coeff[TwoPhotonTable::kZ1Z2] = {e(1, 1) * e(3, 3) + e(3, 1) * e(1, 3),
                                    e(4, 1) * e(3, 3) + e(4, 3) * e(3, 1)};
  return t;
}

}  // namespace qqbf
