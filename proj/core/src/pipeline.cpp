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

#include "qqbf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qqbf {

CountRecord sample_counts(double branch_probability, const QubitDensity& rho,
                          const RiemannPoint& target, long shots, double accidental_rate,
                          double rep_rate, RandomStream& rng,
                          const std::string& herald_label) {
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  if (branch_probability < 0.0 || branch_probability > 1.0)
    throw std::invalid_argument("branch probability outside [0, 1]");
  if (accidental_rate < 0.0 || accidental_rate >= 1.0)
    throw std::invalid_argument("accidental rate outside [0, 1)");
  CountRecord rec;
  rec.rep_rate = rep_rate;
  rec.exposure = static_cast<double>(shots) / rep_rate;
  rec.herald = herald_label;

  const double q0 = fidelity_mixed(rho, target);
  const long events = rng.binomial(shots, branch_probability);
  rec.c0y = rng.binomial(events, q0);
  rec.c1y = events - rec.c0y;

  if (accidental_rate > 0.0) {
    const double lambda_single = static_cast<double>(shots) * accidental_rate;
    const double lambda_pair = lambda_single * accidental_rate;
    rec.n0 = rng.poisson(lambda_single);
    rec.n1 = rng.poisson(lambda_single);
    rec.ny = rng.poisson(lambda_single);
    rec.c0y += rng.poisson(lambda_pair);
    rec.c1y += rng.poisson(lambda_pair);
  }
  return rec;
}

FidelityEstimate fidelity_measured(const CountRecord& rec) {
  const double c0 = static_cast<double>(rec.c0y);
  const double c1 = static_cast<double>(rec.c1y);
  const double total = c0 + c1;
  if (total <= 0.0) throw std::domain_error("no coincidences recorded");
  FidelityEstimate est;
  est.value = c0 / total;
  est.sigma = std::sqrt(c0 * c1 / (total * total * total));
  return est;
}

double accidental_estimate(double n_x, double n_y, double rep_rate, double exposure) {
  if (rep_rate <= 0.0 || exposure <= 0.0)
    throw std::invalid_argument("repetition rate and exposure must be positive");
  return n_x * n_y / (rep_rate * exposure);
}

FidelityEstimate fidelity_corrected(const CountRecord& rec) {
  const double pulses = rec.rep_rate * rec.exposure;
  const double n0 = static_cast<double>(rec.n0);
  const double n1 = static_cast<double>(rec.n1);
  const double ny = static_cast<double>(rec.ny);
  const double tilde0 = n0 * ny / pulses;
  const double tilde1 = n1 * ny / pulses;
  double a = static_cast<double>(rec.c0y) - tilde0;
  double b = static_cast<double>(rec.c1y) - tilde1;

  FidelityEstimate est;
  if (a < 0.0) {
    a = 0.0;
    est.clamped = true;
  }
  if (b < 0.0) {
    b = 0.0;
    est.clamped = true;
  }
  const double total = a + b;
  if (total <= 0.0) {
    est.valid = false;
    return est;
  }
  est.value = a / total;

  // First-order Poisson propagation through F = A/(A+B) with
  // A = C0 - N0 Ny / P and B = C1 - N1 Ny / P.
  const double da = b / (total * total);   // dF/dA
  const double db = -a / (total * total);  // dF/dB
  const double d_c0 = da;
  const double d_c1 = db;
  const double d_n0 = da * (-ny / pulses);
  const double d_n1 = db * (-ny / pulses);
  const double d_ny = da * (-n0 / pulses) + db * (-n1 / pulses);
  const double var = d_c0 * d_c0 * static_cast<double>(rec.c0y) +
                     d_c1 * d_c1 * static_cast<double>(rec.c1y) + d_n0 * d_n0 * n0 +
                     d_n1 * d_n1 * n1 + d_ny * d_ny * ny;
  est.sigma = std::sqrt(std::max(var, 0.0));
  return est;
}

double fidelity_corrected_bootstrap(const CountRecord& rec, int resamples,
                                    RandomStream& rng) {
  if (resamples < 2) throw std::invalid_argument("need at least two resamples");
  double sum = 0.0;
  double sum2 = 0.0;
  int used = 0;
  for (int i = 0; i < resamples; ++i) {
    CountRecord draw = rec;
    draw.c0y = rng.poisson(static_cast<double>(rec.c0y));
    draw.c1y = rng.poisson(static_cast<double>(rec.c1y));
    draw.n0 = rng.poisson(static_cast<double>(rec.n0));
    draw.n1 = rng.poisson(static_cast<double>(rec.n1));
    draw.ny = rng.poisson(static_cast<double>(rec.ny));
    const FidelityEstimate est = fidelity_corrected(draw);
    if (!est.valid) continue;
    sum += est.value;
    sum2 += est.value * est.value;
    ++used;
  }
  if (used < 2) return 0.0;
  const double mean = sum / used;
  return std::sqrt(std::max(sum2 / used - mean * mean, 0.0));
}

std::string to_string(Operation op) {
  switch (op) {
    case Operation::kInversion:
      return "inversion";
    case Operation::kProduct:
      return "product";
    case Operation::kAntiProduct:
      return "anti-product";
    case Operation::kAddition:
      return "addition";
    case Operation::kHarmonicMean:
      return "harmonic-mean";
  }
  return "?";
}

Operation parse_operation(const std::string& text) {
  for (Operation op : {Operation::kInversion, Operation::kProduct, Operation::kAntiProduct,
                       Operation::kAddition, Operation::kHarmonicMean}) {
    if (to_string(op) == text) return op;
  }
  throw std::invalid_argument("unknown operation: " + text);
}

OperationOutcome evaluate_operation(Operation op, const std::vector<RiemannPoint>& inputs,
                                    const OverlapSpec& spec) {
  const double c_i =
      spec.photons() >= 2 ? std::norm(spec.gram()(0, 1)) : 1.0;
  OperationOutcome out{FieldResult::indeterminate(), std::nullopt, 0.0};
  switch (op) {
    case Operation::kInversion: {
      // Mode swapping involves no interference; distinguishability is
      // irrelevant and the operation is deterministic.
      const RiemannPoint target = inversion(inputs.at(0));
      out.target = FieldResult(target);
      out.density = QubitDensity::pure(target);
      out.probability = 1.0;
      return out;
    }
    case Operation::kProduct:
    case Operation::kAntiProduct: {
      const BranchLabel branch =
          op == Operation::kProduct ? BranchLabel::kPlus : BranchLabel::kMinus;
      NoisyOutcome noisy = product_density(inputs.at(0), inputs.at(1), c_i, branch);
      FieldResult prod = field_mul(inputs.at(0), inputs.at(1));
      if (branch == BranchLabel::kMinus && !prod.is_indeterminate())
        prod = field_neg(prod.point());
      out.target = prod;
      out.density = noisy.density;
      out.probability = noisy.probability;
      return out;
    }
    case Operation::kAddition: {
      NoisyOutcome noisy =
          addition_density(inputs.at(0), inputs.at(1), kGoldenReflectivity, c_i);
      out.target = field_add(inputs.at(0), inputs.at(1));
      out.density = noisy.density;
      out.probability = noisy.probability;
      return out;
    }
    case Operation::kHarmonicMean: {
      NoisyOutcome noisy =
          harmonic_density(inputs.at(0), inputs.at(1), kGoldenReflectivity, c_i);
      out.target = field_harmonic(inputs.at(0), inputs.at(1));
      out.density = noisy.density;
      out.probability = noisy.probability;
      return out;
    }
  }
  throw std::logic_error("unreachable operation");
}

namespace {

int operation_arity(Operation op) { return op == Operation::kInversion ? 1 : 2; }

double probability_upper_bound(Operation op) {
  switch (op) {
    case Operation::kInversion:
      return 1.0;
    case Operation::kProduct:
    case Operation::kAntiProduct:
      return 0.5;
    case Operation::kAddition:
    case Operation::kHarmonicMean:
      return 0.2;
  }
  return 1.0;
}

void fill_histogram(Histogram& hist, const std::vector<double>& values,
                    const std::vector<double>& reference, int bins) {
  hist.mass.assign(static_cast<std::size_t>(bins), 0.0);
  hist.overlay.assign(static_cast<std::size_t>(bins), 0.0);
  const double width = (hist.hi - hist.lo) / bins;
  auto bin_of = [&](double v) {
    int b = static_cast<int>((v - hist.lo) / width);
    return std::clamp(b, 0, bins - 1);
  };
  for (double v : values) hist.mass[static_cast<std::size_t>(bin_of(v))] += 1.0;
  for (double v : reference) hist.overlay[static_cast<std::size_t>(bin_of(v))] += 1.0;
  if (!values.empty())
    for (double& x : hist.mass) x /= static_cast<double>(values.size());
  if (!reference.empty())
    for (double& x : hist.overlay) x /= static_cast<double>(reference.size());
}

}  // namespace

EnsembleReport characterize(Operation op, const OverlapSpec& spec,
                            const CharacterizeOptions& options) {
  EnsembleReport report;
  report.operation = to_string(op);
  report.seed = options.seed;
  report.samples = options.samples;
  report.shots = options.shots;
  report.accidental_rate = options.accidental_rate;
  report.rep_rate = options.rep_rate;
  report.c_indistinguishability =
      spec.photons() >= 2 ? std::norm(spec.gram()(0, 1)) : 1.0;

  RandomStream master(options.seed);
  const int arity = operation_arity(op);

  std::vector<double> probabilities;
  probabilities.reserve(static_cast<std::size_t>(options.samples));
  double fid_sum = 0.0;
  double fid_sum2 = 0.0;

  for (int k = 0; k < options.samples; ++k) {
    RandomStream rng = master.split(static_cast<std::uint64_t>(k));
    std::vector<RiemannPoint> inputs;
    for (int i = 0; i < arity; ++i) inputs.push_back(sample_haar(rng));
    const OperationOutcome outcome = evaluate_operation(op, inputs, spec);

    SampleRecord rec;
    rec.inputs = inputs;
    rec.branch = to_string(op);
    rec.probability = outcome.probability;
    if (!outcome.density.has_value() || outcome.target.is_indeterminate()) {
      rec.fidelity = 1.0;
      rec.fidelity_raw = 1.0;
    } else if (options.shots == 0) {
      rec.fidelity = fidelity_mixed(*outcome.density, outcome.target.point());
      rec.fidelity_raw = rec.fidelity;
    } else {
      const CountRecord counts =
          sample_counts(outcome.probability, *outcome.density, outcome.target.point(),
                        options.shots, options.accidental_rate, options.rep_rate, rng);
      const FidelityEstimate raw = fidelity_measured(counts);
      const FidelityEstimate corrected = fidelity_corrected(counts);
      rec.fidelity_raw = raw.value;
      rec.sigma_raw = raw.sigma;
      rec.fidelity = corrected.valid ? corrected.value : raw.value;
      rec.sigma = corrected.valid ? corrected.sigma : raw.sigma;
    }
    fid_sum += rec.fidelity;
    fid_sum2 += rec.fidelity * rec.fidelity;
    probabilities.push_back(rec.probability);
    report.records.push_back(std::move(rec));
  }

  const double n = static_cast<double>(options.samples);
  report.mean_fidelity = fid_sum / n;
  const double var = std::max(fid_sum2 / n - report.mean_fidelity * report.mean_fidelity, 0.0);
  report.mean_fidelity_error = std::sqrt(var / n);

  report.probability_histogram.lo = 0.0;
  report.probability_histogram.hi = probability_upper_bound(op);
  std::vector<double> reference;
  reference.reserve(static_cast<std::size_t>(options.overlay_samples));
  RandomStream overlay_rng = master.split(0x5eedful);
  for (int k = 0; k < options.overlay_samples; ++k) {
    std::vector<RiemannPoint> inputs;
    for (int i = 0; i < arity; ++i) inputs.push_back(sample_haar(overlay_rng));
    reference.push_back(evaluate_operation(op, inputs, spec).probability);
  }
  fill_histogram(report.probability_histogram, probabilities, reference,
                 options.histogram_bins);
  return report;
}

EnsembleReport characterize_preset(const Preset& preset, const std::string& branch,
                                   const OverlapSpec& spec,
                                   const CharacterizeOptions& options) {
  EnsembleReport report;
  report.operation = to_string(preset.name) + " " + branch;
  report.seed = options.seed;
  report.samples = options.samples;
  report.shots = options.shots;
  report.accidental_rate = options.accidental_rate;
  report.rep_rate = options.rep_rate;
  report.c_indistinguishability = spec.c_cross_pair;

  const PresetBranch* branch_spec = nullptr;
  for (const PresetBranch& b : preset.branches)
    if (b.label == branch) branch_spec = &b;
  if (branch_spec == nullptr) throw std::invalid_argument("unknown branch " + branch);

  RandomStream master(options.seed);
  double fid_sum = 0.0;
  double fid_sum2 = 0.0;
  std::vector<double> probabilities;

  for (int k = 0; k < options.samples; ++k) {
    RandomStream rng = master.split(static_cast<std::uint64_t>(k));
    std::vector<RiemannPoint> inputs;
    for (int i = 0; i < preset.photons(); ++i) inputs.push_back(sample_haar(rng));

    const std::vector<NoisyOutcome> outcomes = run_preset_noisy(preset, inputs, spec);
    const NoisyOutcome* hit = nullptr;
    for (const NoisyOutcome& out : outcomes)
      if (out.branch == branch) hit = &out;
    const FieldResult target = branch_spec->expected(inputs);

    SampleRecord rec;
    rec.inputs = inputs;
    rec.branch = branch;
    rec.probability = hit != nullptr ? hit->probability : 0.0;
    if (hit == nullptr || !hit->density.has_value() || target.is_indeterminate()) {
      rec.fidelity = 1.0;
      rec.fidelity_raw = 1.0;
    } else if (options.shots == 0) {
      rec.fidelity = fidelity_mixed(*hit->density, target.point());
      rec.fidelity_raw = rec.fidelity;
    } else {
      const CountRecord counts =
          sample_counts(rec.probability, *hit->density, target.point(), options.shots,
                        options.accidental_rate, options.rep_rate, rng, branch);
      const FidelityEstimate raw = fidelity_measured(counts);
      const FidelityEstimate corrected = fidelity_corrected(counts);
      rec.fidelity_raw = raw.value;
      rec.sigma_raw = raw.sigma;
      rec.fidelity = corrected.valid ? corrected.value : raw.value;
      rec.sigma = corrected.valid ? corrected.sigma : raw.sigma;
    }
    fid_sum += rec.fidelity;
    fid_sum2 += rec.fidelity * rec.fidelity;
    probabilities.push_back(rec.probability);
    report.records.push_back(std::move(rec));
  }

  const double n = static_cast<double>(options.samples);
  report.mean_fidelity = fid_sum / n;
  const double var = std::max(fid_sum2 / n - report.mean_fidelity * report.mean_fidelity, 0.0);
  report.mean_fidelity_error = std::sqrt(var / n);
  report.probability_histogram.lo = 0.0;
  report.probability_histogram.hi = 1.0;
  fill_histogram(report.probability_histogram, probabilities, probabilities,
                 options.histogram_bins);
  return report;
}

std::vector<SweepRow> sweep_critical(SweepOperation op, const SweepOptions& options) {
  if (options.steps < 2) throw std::invalid_argument("sweep needs at least two steps");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(options.steps) * static_cast<std::size_t>(options.steps));
  const double step = (options.max - options.min) / (options.steps - 1);
  for (int i = 0; i < options.steps; ++i) {
    const double x = options.min + i * step;
    for (int j = 0; j < options.steps; ++j) {
      const double y = options.min + j * step;
      double p = 0.0;
      if (op == SweepOperation::kProduct) {
        // x is z1, y is 1/z2; the reciprocal coordinate keeps the
        // indeterminate pair (0, inf) at the grid origin.
        const RiemannPoint z1 = RiemannPoint::from_z({x, 0.0});
        const RiemannPoint z2 = RiemannPoint({1.0, 0.0}, {y, 0.0});
        p = p_product(z1, z2);
      } else {
        const RiemannPoint z1 = RiemannPoint({1.0, 0.0}, {x, 0.0});
        const RiemannPoint z2 = RiemannPoint({1.0, 0.0}, {y, 0.0});
        p = p_addition(z1, z2).first;
      }
      rows.push_back({x, y, p});
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "x,y,probability\n";
  char buffer[128];
  for (const SweepRow& row : rows) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g\n", row.x, row.y,
                  row.probability);
    out += buffer;
  }
  return out;
}

}  // namespace qqbf
