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

#include <map>
#include <vector>

#include "doctest.h"
#include "qqbf/random.hpp"

using namespace qqbf;

namespace {

// Independent oracle: expands a product of single-photon creation-operator
// superpositions by explicit monomial bookkeeping. No permanents involved.
FockVector brute_force_product(int modes,
                               const std::vector<std::vector<Complex>>& photons) {
  std::map<std::vector<int>, Complex> monomials;
  monomials[std::vector<int>(static_cast<std::size_t>(modes), 0)] = {1.0, 0.0};
  for (const auto& photon : photons) {
    std::map<std::vector<int>, Complex> next;
    for (const auto& [occ, coeff] : monomials) {
      for (int mode = 0; mode < modes; ++mode) {
        if (photon[static_cast<std::size_t>(mode)] == Complex{0.0, 0.0}) continue;
        std::vector<int> bumped = occ;
        bumped[static_cast<std::size_t>(mode)] += 1;
        next[bumped] += coeff * photon[static_cast<std::size_t>(mode)];
      }
    }
    monomials = std::move(next);
  }
  FockVector psi(modes);
  for (const auto& [occ, coeff] : monomials) {
    double fac = 1.0;
    for (int n : occ)
      for (int i = 2; i <= n; ++i) fac *= i;
    if (coeff != Complex{0.0, 0.0}) psi.add(FockState(occ), coeff * std::sqrt(fac));
  }
  return psi;
}

FockVector evolve_photons_brute(const Eigen::MatrixXcd& u,
                                const std::vector<std::vector<Complex>>& photons) {
  const int modes = static_cast<int>(u.rows());
  std::vector<std::vector<Complex>> evolved;
  for (const auto& photon : photons) {
    std::vector<Complex> out(static_cast<std::size_t>(modes), Complex{0.0, 0.0});
    for (int i = 0; i < modes; ++i)
      for (int j = 0; j < modes; ++j)
        out[static_cast<std::size_t>(i)] += u(i, j) * photon[static_cast<std::size_t>(j)];
    evolved.push_back(std::move(out));
  }
  return brute_force_product(modes, evolved);
}

double max_amp_difference(const FockVector& a, const FockVector& b) {
  double worst = 0.0;
  for (const auto& [state, amp] : a.amplitudes())
    worst = std::max(worst, std::abs(amp - b.amplitude(state)));
  for (const auto& [state, amp] : b.amplitudes())
    worst = std::max(worst, std::abs(amp - a.amplitude(state)));
  return worst;
}

}  // namespace

TEST_CASE("permanent closed forms") {
  Eigen::MatrixXcd m2(2, 2);
  m2 << Complex{1, 2}, Complex{3, -1}, Complex{0, 1}, Complex{2, 2};
  const Complex expected = Complex{1, 2} * Complex{2, 2} + Complex{3, -1} * Complex{0, 1};
  CHECK(std::abs(permanent(m2) - expected) < 1e-14);

  CHECK(std::abs(permanent(Eigen::MatrixXcd::Identity(3, 3)) - Complex{1, 0}) < 1e-14);
  CHECK(std::abs(permanent(Eigen::MatrixXcd::Ones(2, 2)) - Complex{2, 0}) < 1e-14);
  CHECK(std::abs(permanent(Eigen::MatrixXcd(0, 0)) - Complex{1, 0}) < 1e-14);
  CHECK(std::abs(permanent(Eigen::MatrixXcd::Identity(6, 6)) - Complex{1, 0}) < 1e-12);
  // All-ones n x n has permanent n!.
  CHECK(std::abs(permanent(Eigen::MatrixXcd::Ones(5, 5)) - Complex{120, 0}) < 1e-10);

  CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Ones(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Ones(7, 7)), std::invalid_argument);
}

TEST_CASE("Ryser matches minor expansion on random 4x4..6x6") {
  RandomStream rng(7);
  for (int n = 4; n <= 6; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::MatrixXcd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
      // Laplace expansion along the first row as an independent route.
      Complex lap{0.0, 0.0};
      for (int j = 0; j < n; ++j) {
        Eigen::MatrixXcd minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
          int cc = 0;
          for (int c = 0; c < n; ++c) {
            if (c == j) continue;
            minor(r - 1, cc++) = m(r, c);
          }
        }
        lap += m(0, j) * permanent(minor);
      }
      CHECK(std::abs(permanent(m) - lap) < 1e-10 * std::max(1.0, std::abs(lap)));
    }
  }
}

TEST_CASE("identity evolution returns the input") {
  FockVector psi(3);
  psi.add(FockState({2, 0, 1}), {0.6, 0.0});
  psi.add(FockState({1, 1, 1}), {0.0, 0.8});
  const FockVector out = evolve(Eigen::MatrixXcd::Identity(3, 3), psi);
  CHECK(max_amp_difference(out, psi) < 1e-14);
}

TEST_CASE("single photon on a balanced splitter") {
  Eigen::MatrixXcd u(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  u << s, s, s, -s;
  FockVector psi(2);
  psi.add(FockState({1, 0}), {1.0, 0.0});
  const FockVector out = evolve(u, psi);
  CHECK(std::abs(out.amplitude(FockState({1, 0})) - Complex{s, 0}) < 1e-14);
  CHECK(std::abs(out.amplitude(FockState({0, 1})) - Complex{s, 0}) < 1e-14);
}

TEST_CASE("two-photon bunching cancels the coincidence amplitude") {
  Eigen::MatrixXcd u(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  u << s, s, s, -s;
  FockVector psi(2);
  psi.add(FockState({1, 1}), {1.0, 0.0});
  const FockVector out = evolve(u, psi);
  CHECK(std::abs(out.amplitude(FockState({1, 1}))) < 1e-14);
  CHECK(std::abs(std::abs(out.amplitude(FockState({2, 0}))) - s) < 1e-14);
  CHECK(std::abs(std::abs(out.amplitude(FockState({0, 2}))) - s) < 1e-14);
  // Cross-check against the monomial-expansion oracle.
  const FockVector oracle =
      evolve_photons_brute(u, {{ {1, 0}, {0, 0} }, { {0, 0}, {1, 0} }});
  CHECK(max_amp_difference(out, oracle) < 1e-14);
}

TEST_CASE("evolution preserves norm and composes") {
  RandomStream rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    const int m = 4;
    const Eigen::MatrixXcd u = rng.haar_unitary(m);
    const Eigen::MatrixXcd v = rng.haar_unitary(m);
    FockVector psi(m);
    psi.add(FockState({1, 0, 1, 0}), {0.6, 0.0});
    psi.add(FockState({0, 1, 0, 1}), {0.0, 0.6});
    psi.add(FockState({2, 0, 0, 0}), {std::sqrt(0.28), 0.0});
    REQUIRE(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));

    const FockVector once = evolve(u * v, psi);
    const FockVector twice = evolve(u, evolve(v, psi));
    CHECK(once.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_amp_difference(once, twice) < 1e-12);
  }
}

TEST_CASE("evolve agrees with the monomial oracle on random three-photon states") {
  RandomStream rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 5;
    const Eigen::MatrixXcd u = rng.haar_unitary(m);
    std::vector<std::vector<Complex>> photons;
    for (int k = 0; k < 3; ++k) {
      std::vector<Complex> photon(static_cast<std::size_t>(m), Complex{0.0, 0.0});
      double norm = 0.0;
      for (int i = 0; i < m; ++i) {
        photon[static_cast<std::size_t>(i)] = Complex(rng.normal(), rng.normal());
        norm += std::norm(photon[static_cast<std::size_t>(i)]);
      }
      for (auto& a : photon) a /= std::sqrt(norm);
      photons.push_back(std::move(photon));
    }
    const FockVector input = brute_force_product(m, photons);
    const FockVector via_permanents = evolve(u, input);
    const FockVector via_oracle = evolve_photons_brute(u, photons);
    CHECK(max_amp_difference(via_permanents, via_oracle) < 1e-12);
  }
}

TEST_CASE("photon cap is enforced") {
  FockVector psi(2);
  psi.add(FockState({3, 2}), {1.0, 0.0});
  CHECK_THROWS_AS(evolve(Eigen::MatrixXcd::Identity(2, 2), psi), std::invalid_argument);
  FockVector mismatched(3);
  mismatched.add(FockState({1, 0, 0}), {1.0, 0.0});
  CHECK_THROWS_AS(evolve(Eigen::MatrixXcd::Identity(2, 2), mismatched),
                  std::invalid_argument);
}

TEST_CASE("postselect splits probability correctly") {
  FockVector psi(3);
  psi.add(FockState({1, 1, 0}), {std::sqrt(0.25), 0.0});
  psi.add(FockState({0, 1, 1}), {std::sqrt(0.50), 0.0});
  psi.add(FockState({1, 0, 1}), {std::sqrt(0.25), 0.0});

  SUBCASE("all weight on one pattern") {
    const PostselectResult sel = postselect(psi, {0, 2}, {1});
    CHECK(sel.probability == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(!sel.impossible);
    CHECK(sel.conditional.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::norm(sel.conditional.amplitude(FockState({1, 0}))) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("orthogonal pattern") {
    const PostselectResult sel = postselect(psi, {0, 2}, {2});
    CHECK(sel.probability == doctest::Approx(0.0));
    CHECK(sel.impossible);
  }

  SUBCASE("patterns over an exhaustive partition sum to one") {
    double total = 0.0;
    for (int n1 = 0; n1 <= 2; ++n1) total += postselect(psi, {0, 2}, {n1}).probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("bad partitions are rejected") {
    CHECK_THROWS_AS(postselect(psi, {0, 0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(postselect(psi, {0, 2}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(postselect(psi, {0, 5}, {1}), std::invalid_argument);
  }
}

TEST_CASE("two-photon output table matches the simulator on a z grid") {
  RandomStream rng(17);
  const std::vector<Complex> zs = {{0, 0}, {1, 0}, {0, 1}};
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Matrix4cd u = rng.haar_unitary(4);
    const TwoPhotonTable table = two_photon_output_table(u);
    for (const Complex& z1 : zs) {
      for (const Complex& z2 : zs) {
        // Un-normalized dual-rail pair (z1 a1 + a2)(z2 a3 + a4)|0>.
        FockVector psi(4);
        psi.add(FockState({1, 0, 1, 0}), z1 * z2);
        psi.add(FockState({1, 0, 0, 1}), z1);
        psi.add(FockState({0, 1, 1, 0}), z2);
        psi.add(FockState({0, 1, 0, 1}), {1.0, 0.0});
        psi.set_unnormalized(true);
        const FockVector out = evolve(u, psi);

        const Complex rail1 = table.coeff[TwoPhotonTable::kConst][0] +
                              z1 * table.coeff[TwoPhotonTable::kZ1][0] +
                              z2 * table.coeff[TwoPhotonTable::kZ2][0] +
                              z1 * z2 * table.coeff[TwoPhotonTable::kZ1Z2][0];
        const Complex rail4 = table.coeff[TwoPhotonTable::kConst][1] +
                              z1 * table.coeff[TwoPhotonTable::kZ1][1] +
                              z2 * table.coeff[TwoPhotonTable::kZ2][1] +
                              z1 * z2 * table.coeff[TwoPhotonTable::kZ1Z2][1];
        CHECK(std::abs(out.amplitude(FockState({1, 0, 1, 0})) - rail1) < 1e-12);
        CHECK(std::abs(out.amplitude(FockState({0, 0, 1, 1})) - rail4) < 1e-12);
      }
    }
  }
}

TEST_CASE("identity table entries vanish termwise") {
  const TwoPhotonTable t = two_photon_output_table(Eigen::Matrix4cd::Identity());
  CHECK(std::abs(t.coeff[TwoPhotonTable::kConst][0]) == 0.0);
  CHECK(std::abs(t.coeff[TwoPhotonTable::kZ1][0]) == 0.0);
  CHECK(std::abs(t.coeff[TwoPhotonTable::kZ1Z2][1]) == 0.0);
  CHECK(std::abs(t.coeff[TwoPhotonTable::kZ1Z2][0] - Complex{1, 0}) == 0.0);
}
