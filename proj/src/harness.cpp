// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "phaselab/errors.hpp"
#include "phaselab/free_ops.hpp"

namespace phaselab {

namespace {

std::uint64_t mix_double(std::uint64_t h, double x) {
  constexpr std::uint64_t prime = 0x100000001b3ull;
  unsigned char bytes[sizeof x];
  std::memcpy(bytes, &x, sizeof x);
  for (unsigned char b : bytes) {
    h ^= b;
    h *= prime;
  }
  return h;
}

int pick_dim(std::span<const int> dims, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> idx(0, dims.size() - 1);
  return dims[idx(rng)];
}

OperationClass channel_class(MeasureId measure, const HarnessOptions& options) {
  if (measure == MeasureId::Robustness) return OperationClass::CF;
  return options.exploratory_cf_for_p1 ? OperationClass::CF : OperationClass::CFprime;
}

DensityMatrix channel_output(const ApplyResult& applied) {
  ComplexMatrix total = hermitize(applied.total);
  return DensityMatrix::trusted(total / total.trace().real());
}

std::vector<double> dirichlet_uniform(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& wi : w) {
    wi = expo(rng);
    sum += wi;
  }
  for (double& wi : w) wi /= sum;
  return w;
}

// Resourceful sample for faithfulness: some entry carries enough imaginary
// part that the measure must clear the tolerance.
DensityMatrix random_phase_carrying_state(int dim, std::mt19937_64& rng, double floor) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    DensityMatrix rho = random_mixed_state(dim, rng);
    double max_im = 0.0;
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) max_im = std::max(max_im, std::abs(rho.entry(j, k).imag()));
    if (max_im > floor) return rho;
  }
  raise(ErrorCode::InvalidArgument, "could not sample a phase-carrying state");
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double default_axiom_tol(MeasureId measure, Axiom axiom) {
  if (measure == MeasureId::Robustness) return 1e-5;
  return axiom == Axiom::PermInv ? 1e-12 : 1e-8;
}

const char* axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::P1: return "P1";
    case Axiom::P2: return "P2";
    case Axiom::P3: return "P3";
    case Axiom::P4: return "P4";
    case Axiom::P5: return "P5";
    case Axiom::ConjInv: return "ConjInv";
    case Axiom::PermInv: return "PermInv";
  }
  return "?";
}

const char* measure_name(MeasureId measure) {
  return measure == MeasureId::P1 ? "p1" : "robustness";
}

std::vector<CheckReport> check_axiom(MeasureId measure, Axiom axiom, int trials,
                                     std::uint64_t seed, std::span<const int> dims,
                                     const HarnessOptions& options) {
  if (trials < 1) raise(ErrorCode::InvalidArgument, "check_axiom needs trials >= 1");
  if (dims.empty()) raise(ErrorCode::InvalidArgument, "check_axiom needs at least one dim");
  for (int d : dims)
    if (d < 2 || d > 8) raise(ErrorCode::InvalidArgument, "harness dims must lie in 2..8");
  if (axiom == Axiom::PermInv) return permutation_invariance_check(measure, trials, seed, dims);

  const double tol = options.tol > 0.0 ? options.tol : default_axiom_tol(measure, axiom);
  std::vector<CheckReport> reports;
  reports.reserve(static_cast<std::size_t>(trials));

  for (int t = 0; t < trials; ++t) {
    CheckReport report;
    report.axiom = axiom;
    report.measure = measure;
    report.trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(report.trial_seed);
    const int dim = pick_dim(dims, rng);

    switch (axiom) {
      case Axiom::P1: {
        const DensityMatrix sigma = random_zero_phase_state(dim, rng);
        const DensityMatrix rho = random_phase_carrying_state(dim, rng, 10.0 * tol);
        const double on_free = evaluate(measure, sigma);
        const double on_resourceful = evaluate(measure, rho);
        report.margin = std::min(-std::abs(on_free), on_resourceful - 2.0 * tol);
        report.inputs_digest = matrix_digest(rho.matrix(), matrix_digest(sigma.matrix()));
        break;
      }
      case Axiom::P2:
      case Axiom::P3: {
        const DensityMatrix rho = random_mixed_state(dim, rng);
        const int n_ops = 1 + static_cast<int>(rng() % 3);
        const KrausSet channel =
            sample_free_operation(dim, channel_class(measure, options), n_ops, rng());
        const ApplyResult applied = apply_operation(channel, rho);
        const double before = evaluate(measure, rho);
        if (axiom == Axiom::P2) {
          report.margin = before - evaluate(measure, channel_output(applied));
        } else {
          double after = 0.0;
          for (const Outcome& outcome : applied.outcomes)
            if (outcome.state) after += outcome.probability * evaluate(measure, *outcome.state);
          report.margin = before - after;
        }
        std::uint64_t digest = matrix_digest(rho.matrix());
        for (const ComplexMatrix& k : channel.operators()) digest = matrix_digest(k, digest);
        report.inputs_digest = digest;
        break;
      }
      case Axiom::P4: {
        const int members = 2 + static_cast<int>(rng() % 3);
        const std::vector<double> weights = dirichlet_uniform(members, rng);
        std::vector<DensityMatrix> ensemble;
        ensemble.reserve(static_cast<std::size_t>(members));
        for (int i = 0; i < members; ++i) ensemble.push_back(random_mixed_state(dim, rng));
        ComplexMatrix mix = ComplexMatrix::Zero(dim, dim);
        double weighted = 0.0;
        std::uint64_t digest = 0xcbf29ce484222325ull;
        for (int i = 0; i < members; ++i) {
          mix += weights[static_cast<std::size_t>(i)] * ensemble[static_cast<std::size_t>(i)].matrix();
          weighted +=
              weights[static_cast<std::size_t>(i)] * evaluate(measure, ensemble[static_cast<std::size_t>(i)]);
          digest = mix_double(matrix_digest(ensemble[static_cast<std::size_t>(i)].matrix(), digest),
                              weights[static_cast<std::size_t>(i)]);
        }
        report.margin = weighted - evaluate(measure, DensityMatrix::trusted(hermitize(mix)));
        report.inputs_digest = digest;
        break;
      }
      case Axiom::P5: {
        const int d2 = pick_dim(dims, rng);
        const DensityMatrix rho1 = random_mixed_state(dim, rng);
        const DensityMatrix rho2 = random_mixed_state(d2, rng);
        std::uniform_real_distribution<double> unit(0.05, 0.95);
        const double w = unit(rng);
        const DensityMatrix block = weighted_direct_sum(w, rho1, 1.0 - w, rho2);
        const double split =
            w * evaluate(measure, rho1) + (1.0 - w) * evaluate(measure, rho2);
        report.margin = -std::abs(evaluate(measure, block) - split);
        report.inputs_digest =
            mix_double(matrix_digest(rho2.matrix(), matrix_digest(rho1.matrix())), w);
        break;
      }
      case Axiom::ConjInv: {
        const DensityMatrix rho = random_mixed_state(dim, rng);
        report.margin = -std::abs(evaluate(measure, rho) - evaluate(measure, rho.conjugate()));
        report.inputs_digest = matrix_digest(rho.matrix());
        break;
      }
      case Axiom::PermInv:
        break; // handled above
    }

    report.passed = report.margin >= -tol;
    reports.push_back(report);
  }
  return reports;
}

std::vector<CheckReport> permutation_invariance_check(MeasureId measure, int trials,
                                                      std::uint64_t seed,
                                                      std::span<const int> dims) {
  if (trials < 1) raise(ErrorCode::InvalidArgument, "permutation check needs trials >= 1");
  if (dims.empty()) raise(ErrorCode::InvalidArgument, "permutation check needs dims");
  const double tol = default_axiom_tol(measure, Axiom::PermInv);

  std::vector<CheckReport> reports;
  reports.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    CheckReport report;
    report.axiom = Axiom::PermInv;
    report.measure = measure;
    report.trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(report.trial_seed);
    const int dim = pick_dim(dims, rng);
    const DensityMatrix rho = random_mixed_state(dim, rng);

    std::vector<int> perm(static_cast<std::size_t>(dim));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ComplexMatrix shuffled(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        shuffled(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(k)]) =
            rho.entry(j, k);

    const double before = evaluate(measure, rho);
    const double after = evaluate(measure, DensityMatrix::trusted(std::move(shuffled)));
    report.margin = -std::abs(after - before);
    report.inputs_digest = matrix_digest(rho.matrix());
    report.passed = report.margin >= -tol;
    reports.push_back(report);
  }
  return reports;
}

SuiteSummary summarize(const std::vector<CheckReport>& reports) {
  SuiteSummary summary;
  if (reports.empty()) return summary;
  summary.measure = reports.front().measure;
  summary.axiom = reports.front().axiom;
  summary.trials = static_cast<int>(reports.size());
  summary.worst_margin = reports.front().margin;
  for (const CheckReport& r : reports) {
    if (!r.passed) ++summary.failures;
    summary.worst_margin = std::min(summary.worst_margin, r.margin);
  }
  return summary;
}

} // namespace phaselab
