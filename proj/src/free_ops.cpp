// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/free_ops.hpp"

#include <cmath>
#include <sstream>

#include "phaselab/errors.hpp"
#include "phaselab/linalg.hpp"

namespace phaselab {

KrausSet KrausSet::create(int dim, std::vector<ComplexMatrix> operators) {
  if (dim < 1) raise(ErrorCode::BadDimension, "Kraus set needs dim >= 1");
  for (const ComplexMatrix& k : operators) {
    if (k.rows() != dim || k.cols() != dim) {
      std::ostringstream msg;
      msg << "Kraus operator is " << k.rows() << "x" << k.cols() << ", expected " << dim << "x"
          << dim;
      raise(ErrorCode::DimensionMismatch, msg.str());
    }
    if (!all_finite(k)) raise(ErrorCode::InvalidArgument, "Kraus operator has NaN/Inf entries");
  }
  KrausSet ks(dim, std::move(operators));
  const double min_eig = hermitian_eig(ks.completeness_defect()).eigenvalues.minCoeff();
  if (min_eig < -tol::channel) {
    std::ostringstream msg;
    msg << "sum K^dagger K exceeds I: defect eigenvalue " << min_eig << " below -" << tol::channel;
    raise(ErrorCode::NotSubnormalized, msg.str());
  }
  return ks;
}

ComplexMatrix KrausSet::completeness_defect() const {
  ComplexMatrix acc = ComplexMatrix::Identity(dim_, dim_);
  for (const ComplexMatrix& k : ops_) acc -= k.adjoint() * k;
  return hermitize(acc);
}

double KrausSet::defect_norm() const {
  if (ops_.empty()) return 1.0; // defect is I itself
  return hermitian_eig(completeness_defect()).eigenvalues.cwiseAbs().maxCoeff();
}

DensityMatrix probe_state(int dim, int l, int m, double p, double x) {
  if (l < 0 || m <= l || m >= dim) raise(ErrorCode::InvalidArgument, "probe needs 0 <= l < m < dim");
  if (p < 0.0 || p > 1.0) raise(ErrorCode::InvalidArgument, "probe weight p outside [0,1]");
  const double xmax = std::sqrt(p * (1.0 - p));
  if (x < 0.0 || x > xmax + 1e-12) raise(ErrorCode::InvalidArgument, "probe coherence x outside [0, sqrt(p(1-p))]");
  ComplexMatrix sigma = ComplexMatrix::Zero(dim, dim);
  sigma(l, l) = p;
  sigma(m, m) = 1.0 - p;
  sigma(l, m) = x;
  sigma(m, l) = x;
  return DensityMatrix::trusted(std::move(sigma));
}

namespace {

// K sigma K^dagger for the two-level probe, using only columns l and m of K.
ComplexMatrix probe_image(const ComplexMatrix& k, int l, int m, double p, double x) {
  const ComplexVector kl = k.col(l), km = k.col(m);
  ComplexMatrix out = p * (kl * kl.adjoint()) + (1.0 - p) * (km * km.adjoint());
  if (x != 0.0) out += x * (kl * km.adjoint() + km * kl.adjoint());
  return out;
}

std::optional<Witness> first_violation(const ComplexMatrix& image, int l, int m, double p,
                                       double x, double tol) {
  for (Eigen::Index j = 0; j < image.rows(); ++j)
    for (Eigen::Index jp = 0; jp < image.cols(); ++jp) {
      const Complex z = image(j, jp);
      const double violation = std::max(-z.real(), std::abs(z.imag()));
      if (violation > tol) {
        Witness w;
        w.l = l;
        w.m = m;
        w.p = p;
        w.x = x;
        w.row = static_cast<int>(j);
        w.col = static_cast<int>(jp);
        w.violation = violation;
        return w;
      }
    }
  return std::nullopt;
}

} // namespace

std::optional<Witness> witness_search(const ComplexMatrix& k, int grid, bool dense_x,
                                      double tol) {
  if (grid < 3) raise(ErrorCode::InvalidArgument, "witness grid needs >= 3 points");
  const int d = static_cast<int>(k.cols());
  for (int l = 0; l < d; ++l)
    for (int m = l + 1; m < d; ++m)
      for (int gi = 0; gi < grid; ++gi) {
        const double p = static_cast<double>(gi) / (grid - 1);
        const double xmax = std::sqrt(p * (1.0 - p));
        if (dense_x) {
          for (int xi = 0; xi < grid; ++xi) {
            const double x = xmax * static_cast<double>(xi) / (grid - 1);
            if (auto w = first_violation(probe_image(k, l, m, p, x), l, m, p, x, tol)) return w;
          }
        } else {
          for (const double x : {0.0, xmax}) {
            if (auto w = first_violation(probe_image(k, l, m, p, x), l, m, p, x, tol)) return w;
          }
        }
      }
  return std::nullopt;
}

OperatorClass classify_operator(const ComplexMatrix& k, double tol) {
  OperatorClass out;
  const double peak = max_abs_entry(k);
  if (peak > 0.0) {
    const TopSvd svd = svd_top(k);
    const double s1 = svd.singular_values[0];
    const double s2 = svd.singular_values.size() > 1 ? svd.singular_values[1] : 0.0;
    if (s1 > 0.0 && s2 / s1 <= tol) {
      int pivot = 0;
      double best = -1.0;
      for (Eigen::Index j = 0; j < svd.left.size(); ++j)
        if (std::abs(svd.left[j]) > best) {
          best = std::abs(svd.left[j]);
          pivot = static_cast<int>(j);
        }
      const double phase = std::arg(svd.left[pivot]);
      const ComplexVector rotated = svd.left * std::polar(1.0, -phase);
      if (entrywise_nonnegative(rotated, tol)) {
        out.tag = OperatorTag::O0Form;
        out.s = (s1 * rotated.real()).cwiseMax(0.0);
        out.psi = svd.right * std::polar(1.0, -phase);
        return out;
      }
    }
  }

  // Global-phase quotient: divide out the phase of the largest-modulus entry.
  int pr = 0, pc = 0;
  max_abs_entry(k, &pr, &pc);
  const double alpha = peak > 0.0 ? std::arg(k(pr, pc)) : 0.0;
  const ComplexMatrix rotated = k * std::polar(1.0, -alpha);
  if (entrywise_nonnegative(rotated, tol)) {
    out.removed_phase = alpha;
    bool incoherent = true;
    for (Eigen::Index c = 0; c < rotated.cols() && incoherent; ++c) {
      int above = 0;
      for (Eigen::Index r = 0; r < rotated.rows(); ++r)
        if (std::abs(rotated(r, c)) > tol) ++above;
      incoherent = above <= 1;
    }
    out.tag = incoherent ? OperatorTag::O2Form : OperatorTag::O1Form;
    return out;
  }

  out.tag = OperatorTag::NotFree;
  out.witness = witness_search(k);
  if (!out.witness) out.witness = witness_search(k, 65, /*dense_x=*/true);
  return out;
}

OperationReport classify_operation(const KrausSet& ks) {
  OperationReport report;
  report.is_cf = true;
  report.is_cf_prime = true;
  report.per_operator.reserve(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    OperatorClass oc = classify_operator(ks.op(i));
    if (oc.witness) oc.witness->operator_index = static_cast<int>(i);
    switch (oc.tag) {
      case OperatorTag::O0Form:
        break;
      case OperatorTag::O1Form:
        report.is_cf_prime = false;
        break;
      case OperatorTag::O2Form:
        break;
      case OperatorTag::NotFree:
        report.is_cf = false;
        report.is_cf_prime = false;
        break;
    }
    report.per_operator.push_back(std::move(oc));
  }
  report.cls = report.is_cf_prime ? OperationClass::CFprime
               : report.is_cf     ? OperationClass::CF
                                  : OperationClass::NotFree;
  report.is_channel = ks.is_channel();
  return report;
}

KrausSet complete_to_channel(const KrausSet& ks, std::optional<std::uint64_t> seed) {
  const ComplexMatrix defect = ks.completeness_defect();
  const EigenDecomposition eig = hermitian_eig(defect);
  if (eig.eigenvalues.minCoeff() < -tol::channel) {
    std::ostringstream msg;
    msg << "operation is not subnormalized: defect eigenvalue " << eig.eigenvalues.minCoeff();
    raise(ErrorCode::NotSubnormalized, msg.str());
  }

  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);

  std::vector<ComplexMatrix> ops = ks.operators();
  const int d = ks.dim();
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda <= tol::spectrum_floor) continue;
    const double s_norm = std::sqrt(lambda);
    ComplexVector s = ComplexVector::Zero(d);
    if (rng) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      RealVector dir(d);
      for (int j = 0; j < d; ++j) dir[j] = std::abs(gauss(*rng));
      dir /= dir.norm();
      for (int j = 0; j < d; ++j) s[j] = s_norm * dir[j];
    } else {
      s[0] = s_norm;
    }
    ops.push_back(s * eig.eigenvectors.col(i).adjoint());
  }
  return KrausSet::create(d, std::move(ops));
}

KrausSet prop2_channel(const PureState& target) {
  const int d = target.dim();
  int pivot = 0;
  double best = -1.0;
  for (int j = 0; j < d; ++j)
    if (target.modulus(j) > best) {
      best = target.modulus(j);
      pivot = j;
    }
  const ComplexVector phi = target.amplitudes() * std::polar(1.0, -target.phase_angle(pivot));
  if (!entrywise_nonnegative(phi, tol::zero_phase)) {
    raise(ErrorCode::TargetNotNonnegative,
          "target is not a nonnegative vector up to a global phase");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    z.col(j) = phi;
    ops.push_back(std::move(z));
  }
  return KrausSet::create(d, std::move(ops));
}

KrausSet prop3_channel(const RealVector& moduli) {
  const int d = static_cast<int>(moduli.size());
  if (d < 1) raise(ErrorCode::BadDimension, "prop3 needs dim >= 1");
  for (int j = 0; j < d; ++j)
    if (moduli[j] < 0.0) raise(ErrorCode::InvalidArgument, "moduli must be nonnegative");
  const double norm_err = std::abs(moduli.squaredNorm() - 1.0);
  if (norm_err > tol::norm) {
    std::ostringstream msg;
    msg << "moduli are not normalized: |sum c^2 - 1| = " << norm_err;
    raise(ErrorCode::NotNormalized, msg.str());
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(d));
  for (int shift = 0; shift < d; ++shift) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) m(k, (k + shift) % d) = moduli[k];
    ops.push_back(std::move(m));
  }
  return KrausSet::create(d, std::move(ops));
}

ApplyResult apply_operation(const KrausSet& ks, const DensityMatrix& rho) {
  if (ks.dim() != rho.dim()) {
    std::ostringstream msg;
    msg << "operation dim " << ks.dim() << " vs state dim " << rho.dim();
    raise(ErrorCode::DimensionMismatch, msg.str());
  }
  ApplyResult result;
  result.total = ComplexMatrix::Zero(ks.dim(), ks.dim());
  result.outcomes.reserve(ks.size());
  for (const ComplexMatrix& k : ks.operators()) {
    ComplexMatrix image = hermitize(k * rho.matrix() * k.adjoint());
    const double prob = std::max(image.trace().real(), 0.0);
    result.total += image;
    Outcome outcome;
    outcome.probability = prob;
    if (prob >= tol::outcome_floor) outcome.state = DensityMatrix::trusted(image / prob);
    result.outcomes.push_back(std::move(outcome));
  }
  result.total = hermitize(result.total);
  result.total_probability = result.total.trace().real();
  return result;
}

KrausSet sample_free_operation(int dim, OperationClass cls, int n_ops, std::uint64_t seed) {
  if (dim < 1) raise(ErrorCode::BadDimension, "sample_free_operation needs dim >= 1");
  if (n_ops < 1) raise(ErrorCode::InvalidArgument, "sample_free_operation needs n_ops >= 1");
  if (cls == OperationClass::NotFree)
    raise(ErrorCode::InvalidArgument, "cannot sample the NotFree class");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> row(0, dim - 1);

  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(n_ops));
  for (int i = 0; i < n_ops; ++i) {
    ComplexMatrix l = ComplexMatrix::Zero(dim, dim);
    if (cls == OperationClass::CF) {
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) l(r, c) = std::abs(gauss(rng));
    } else {
      for (int c = 0; c < dim; ++c) l(row(rng), c) = std::abs(gauss(rng));
    }
    ops.push_back(std::move(l));
  }

  ComplexMatrix gram = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix& l : ops) gram += l.adjoint() * l;
  const double top = hermitian_eig(gram).eigenvalues.maxCoeff();
  const double scale = std::sqrt(0.9 / top);
  for (ComplexMatrix& l : ops) l *= scale;

  return complete_to_channel(KrausSet::create(dim, std::move(ops)));
}

} // namespace phaselab
