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
#include <cstdint>
#include <string>
#include <vector>

#include "qqbf/density.hpp"
#include "qqbf/noise.hpp"
#include "qqbf/presets.hpp"
#include "qqbf/random.hpp"
#include "qqbf/riemann.hpp"

namespace qqbf {

/// Simulated detection record for one configuration: coincidences between
/// the projector outputs (0/1) and the post-selection herald y, the singles
/// counts of the three channels, the source repetition rate and the
/// exposure time.
struct CountRecord {
  long c0y = 0;
  long c1y = 0;
  long n0 = 0;
  long n1 = 0;
  long ny = 0;
  double rep_rate = 0.0;
  double exposure = 0.0;
  std::string herald = "+";
};

/// Draws detection events for `shots` source pulses. True coincidences
/// follow the branch probability and the projection statistics of rho onto
/// the target; accidentals are an independent Poisson stream with
/// per-pulse click rate `accidental_rate` on every channel, so the
/// singles-based estimate of the spurious coincidences is unbiased.
CountRecord sample_counts(double branch_probability, const QubitDensity& rho,
                          const RiemannPoint& target, long shots, double accidental_rate,
                          double rep_rate, RandomStream& rng,
                          const std::string& herald_label = "+");

struct FidelityEstimate {
  double value = 0.0;
  double sigma = 0.0;
  bool clamped = false;  ///< accidental subtraction hit a negative count
  bool valid = true;     ///< false when the corrected denominator vanishes
};

/// F_M = C0y / (C0y + C1y) with the Poisson-propagated error
/// sqrt(C0y C1y / (C0y + C1y)^3).
FidelityEstimate fidelity_measured(const CountRecord& rec);

/// Expected accidental coincidences N_x N_y / (f T).
double accidental_estimate(double n_x, double n_y, double rep_rate, double exposure);

/// F_C: both coincidence counts corrected by the singles-based accidental
/// estimate before forming the ratio. Negative corrected counts clamp to
/// zero and set the flag. The error propagates the Poisson variance of all
/// five raw counts to first order.
FidelityEstimate fidelity_corrected(const CountRecord& rec);

/// Bootstrap standard deviation of F_C under Poisson resampling of the raw
/// counts; cross-checks the first-order propagation.
double fidelity_corrected_bootstrap(const CountRecord& rec, int resamples,
                                    RandomStream& rng);

enum class Operation { kInversion, kProduct, kAntiProduct, kAddition, kHarmonicMean };

std::string to_string(Operation op);
Operation parse_operation(const std::string& text);

/// Output state, target and branch probability of one operation evaluated
/// through the noise closed forms (pure states for an ideal spec).
struct OperationOutcome {
  FieldResult target;
  std::optional<QubitDensity> density;
  double probability = 0.0;
};

OperationOutcome evaluate_operation(Operation op, const std::vector<RiemannPoint>& inputs,
                                    const OverlapSpec& spec);

struct SampleRecord {
  std::vector<RiemannPoint> inputs;
  std::string branch;
  double probability = 0.0;
  double fidelity = 0.0;       ///< corrected estimate (or exact in analytic mode)
  double sigma = 0.0;
  double fidelity_raw = 0.0;   ///< uncorrected estimate
  double sigma_raw = 0.0;
};

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> mass;     ///< empirical bin masses, sum 1
  std::vector<double> overlay;  ///< closed-form push-forward reference
};

struct EnsembleReport {
  std::string operation;
  std::uint64_t seed = 0;
  int samples = 0;
  long shots = 0;  ///< 0 means the analytic infinite-shots mode
  double accidental_rate = 0.0;
  double rep_rate = 0.0;
  double c_indistinguishability = 1.0;
  std::vector<SampleRecord> records;
  double mean_fidelity = 0.0;
  double mean_fidelity_error = 0.0;
  Histogram probability_histogram;
};

struct CharacterizeOptions {
  int samples = 1000;
  long shots = 0;  ///< 0 => analytic mode
  double accidental_rate = 0.0;
  double rep_rate = 7.6e7;
  std::uint64_t seed = 1;
  int histogram_bins = 50;
  int overlay_samples = 100000;
};

/// Haar-ensemble characterization of one operation: samples input states
/// uniformly on the Bloch sphere, runs the pipeline per sample and
/// aggregates fidelities and the success-probability histogram against its
/// closed-form reference.
EnsembleReport characterize(Operation op, const OverlapSpec& spec,
                            const CharacterizeOptions& options);

/// Same driver over a full chip preset branch (three-photon presets run the
/// Gram-matrix simulator per sample).
EnsembleReport characterize_preset(const Preset& preset, const std::string& branch,
                                   const OverlapSpec& spec,
                                   const CharacterizeOptions& options);

enum class SweepOperation { kProduct, kAddition };

struct SweepOptions {
  double min = -1.0;
  double max = 1.0;
  int steps = 101;
};

struct SweepRow {
  double x = 0.0;
  double y = 0.0;
  double probability = 0.0;
};

/// Success-probability sweeps around the indeterminate points: the product
/// over (z1, 1/z2) and the addition over (1/z1, 1/z2), both real grids.
std::vector<SweepRow> sweep_critical(SweepOperation op, const SweepOptions& options);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace qqbf
