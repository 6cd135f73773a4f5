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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace qqbf {

/// SplitMix64 step, used to derive per-task seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic random stream. The distribution mappings are implemented by
/// hand so a given seed produces the same sequence on every platform, which
/// the report-reproducibility contract relies on.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  /// Exact Bernoulli-sum binomial draw.
  long binomial(long trials, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    long hits = 0;
    for (long i = 0; i < trials; ++i)
      if (uniform() < p) ++hits;
    return hits;
  }

  /// Exact Poisson draw; large means are split into chunks so the Knuth
  /// product never underflows.
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    long total = 0;
    double remaining = mean;
    while (remaining > 0.0) {
      const double chunk = std::min(remaining, 16.0);
      const double limit = std::exp(-chunk);
      long k = 0;
      double prod = uniform();
      while (prod > limit) {
        ++k;
        prod *= uniform();
      }
      total += k;
      remaining -= chunk;
    }
    return total;
  }

  /// Haar-distributed n x n unitary: QR of a complex Gaussian matrix with
  /// the R-diagonal phase fix.
  Eigen::MatrixXcd haar_unitary(int n) {
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = std::complex<double>(normal(), normal());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      std::complex<double> d = r(j, j);
      const double mag = std::abs(d);
      q.col(j) *= (mag > 0.0) ? d / mag : std::complex<double>(1.0, 0.0);
    }
    return q;
  }

  /// Child stream with independent state; reproducible regardless of how
  /// samples are scheduled across threads.
  RandomStream split(std::uint64_t stream_index) const {
    return RandomStream(splitmix64(seed_ ^ splitmix64(stream_index + 1)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace qqbf
