// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "phaselab/errors.hpp"
#include "phaselab/linalg.hpp"

namespace phaselab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0; // fmod rounding can land exactly on 2pi
  return t;
}

double wrap_angle_signed(double theta) {
  double t = std::remainder(theta, kTwoPi);
  if (t <= -std::numbers::pi) t += kTwoPi;
  return t;
}

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream msg;
    msg << "density matrix must be square and nonempty, got " << m.rows() << "x" << m.cols();
    raise(ErrorCode::BadDimension, msg.str());
  }
  if (!all_finite(m)) raise(ErrorCode::InvalidArgument, "density matrix has NaN/Inf entries");
  const double herm = hermiticity_defect(m);
  if (herm > tol::hermitian) {
    std::ostringstream msg;
    msg << "not Hermitian: defect " << herm << " exceeds " << tol::hermitian;
    raise(ErrorCode::NotHermitian, msg.str());
  }
  ComplexMatrix h = hermitize(m);
  const double trace_err = std::abs(h.trace().real() - 1.0);
  if (trace_err > tol::trace) {
    std::ostringstream msg;
    msg << "bad trace: |trace - 1| = " << trace_err << " exceeds " << tol::trace;
    raise(ErrorCode::BadTrace, msg.str());
  }
  const EigenDecomposition eig = hermitian_eig(h);
  const double min_eig = eig.eigenvalues.minCoeff();
  if (min_eig < -tol::psd_floor) {
    std::ostringstream msg;
    msg << "not PSD: minimum eigenvalue " << min_eig << " below -" << tol::psd_floor;
    raise(ErrorCode::NotPsd, msg.str());
  }
  return DensityMatrix(std::move(h));
}

DensityMatrix validate_density(const ComplexMatrix& m) { return DensityMatrix::validate(m); }

PureState PureState::validate(const ComplexVector& amplitudes) {
  if (amplitudes.size() < 1) raise(ErrorCode::BadDimension, "pure state must have dim >= 1");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > tol::norm) {
    std::ostringstream msg;
    msg << "not normalized: |norm - 1| = " << std::abs(norm - 1.0) << " exceeds " << tol::norm;
    raise(ErrorCode::NotNormalized, msg.str());
  }
  return PureState(amplitudes);
}

PureState PureState::normalized(const ComplexVector& amplitudes) {
  if (amplitudes.size() < 1) raise(ErrorCode::BadDimension, "pure state must have dim >= 1");
  const double norm = amplitudes.norm();
  if (norm <= 0.0) raise(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
  return PureState(amplitudes / norm);
}

DensityMatrix PureState::projector() const {
  return DensityMatrix::trusted(c_ * c_.adjoint());
}

PhaseProfile PhaseProfile::canonical(RealVector thetas) {
  if (thetas.size() < 1) raise(ErrorCode::BadDimension, "phase profile must have dim >= 1");
  const double base = thetas[0];
  for (Eigen::Index j = 0; j < thetas.size(); ++j) thetas[j] = wrap_angle(thetas[j] - base);
  return PhaseProfile(std::move(thetas));
}

bool is_zero_phase(const ComplexMatrix& m, double tol) {
  return entrywise_nonnegative(m, tol);
}

bool is_zero_phase(const DensityMatrix& rho, double tol) {
  return entrywise_nonnegative(rho.matrix(), tol);
}

DensityMatrix bloch_to_rho(const BlochVector& b) {
  const double r2 = b.x * b.x + b.y * b.y + b.z * b.z;
  if (r2 > 1.0 + tol::psd_floor) {
    std::ostringstream msg;
    msg << "Bloch vector outside the unit ball: |r|^2 = " << r2;
    raise(ErrorCode::BlochOutOfBall, msg.str());
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(0.5 * (1.0 + b.z), 0.0);
  m(0, 1) = Complex(0.5 * b.x, -0.5 * b.y);
  m(1, 0) = Complex(0.5 * b.x, 0.5 * b.y);
  m(1, 1) = Complex(0.5 * (1.0 - b.z), 0.0);
  return DensityMatrix::trusted(std::move(m));
}

BlochVector rho_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    std::ostringstream msg;
    msg << "Bloch representation needs dim 2, got " << rho.dim();
    raise(ErrorCode::BadDimension, msg.str());
  }
  const ComplexMatrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

CoherentPhaseState coherent_phase_state(Complex epsilon, int trunc_dim) {
  const double mod = std::abs(epsilon);
  if (mod > 1.0 - 1e-6) {
    std::ostringstream msg;
    msg << "|epsilon| = " << mod << " exceeds 1 - 1e-6";
    raise(ErrorCode::EpsilonTooLarge, msg.str());
  }
  if (trunc_dim < 1) raise(ErrorCode::BadDimension, "trunc_dim must be >= 1");

  ComplexVector amps(trunc_dim);
  const double head = 1.0 - mod * mod;
  Complex power(1.0, 0.0);
  double kept = 0.0;
  for (int j = 0; j < trunc_dim; ++j) {
    amps[j] = std::sqrt(head) * power;
    kept += head * std::pow(mod * mod, j);
    power *= epsilon;
  }
  const double weight = std::max(0.0, 1.0 - kept);
  return {PureState::normalized(amps), weight};
}

PureState max_phase_state(int dim, MaxStateVariant variant, std::uint64_t seed) {
  if (dim < 2) raise(ErrorCode::BadDimension, "max_phase_state needs dim >= 2");

  std::vector<Complex> units;
  units.reserve(static_cast<std::size_t>(dim));
  if (variant == MaxStateVariant::Regular) {
    for (int j = 0; j < dim; ++j) units.push_back(std::polar(1.0, kTwoPi * j / dim));
  } else {
    // Fill d slots with closed sub-polygons: antipodal pairs and equilateral
    // triples, each rotated by an independent uniform angle.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    int triples = dim % 2 == 0 ? 0 : 1;
    if (dim >= 6) {
      std::uniform_int_distribution<int> extra(0, (dim - 3 * triples) / 6);
      triples += 2 * extra(rng); // keep the remainder even
    }
    for (int t = 0; t < triples; ++t) {
      const Complex base = std::polar(1.0, angle(rng));
      const Complex w = std::polar(1.0, kTwoPi / 3.0);
      units.push_back(base);
      units.push_back(base * w);
      units.push_back(base * std::conj(w)); // 1 + w + w^2 = 0
    }
    const int pairs = (dim - 3 * triples) / 2;
    for (int p = 0; p < pairs; ++p) {
      const Complex base = std::polar(1.0, angle(rng));
      units.push_back(base);
      units.push_back(-base);
    }
    std::shuffle(units.begin(), units.end(), rng);
  }

  ComplexVector amps(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) amps[j] = units[static_cast<std::size_t>(j)] * scale;
  return PureState::validate(amps);
}

std::vector<Complex> polygon_vertices(const PureState& psi) {
  const int d = psi.dim();
  double lo = psi.modulus(0), hi = psi.modulus(0);
  for (int j = 1; j < d; ++j) {
    lo = std::min(lo, psi.modulus(j));
    hi = std::max(hi, psi.modulus(j));
  }
  if (hi - lo > tol::zero_phase) {
    std::ostringstream msg;
    msg << "moduli spread " << (hi - lo) << " exceeds " << tol::zero_phase
        << "; polygon form needs equimodular amplitudes";
    raise(ErrorCode::NotEquimodular, msg.str());
  }

  // Standard form: wrap, sort, and rotate so the smallest angle is zero.
  std::vector<double> phases(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) phases[static_cast<std::size_t>(j)] = wrap_angle(psi.phase_angle(j));
  std::sort(phases.begin(), phases.end());
  const double base = phases.front();
  for (double& t : phases) t = wrap_angle(t - base);
  std::sort(phases.begin(), phases.end());

  std::vector<Complex> vertices;
  vertices.reserve(static_cast<std::size_t>(d) + 1);
  Complex m(0.0, 0.0);
  vertices.push_back(m);
  for (int j = 0; j < d; ++j) {
    m += psi.modulus(j) * std::polar(1.0, phases[static_cast<std::size_t>(j)]);
    vertices.push_back(m);
  }
  return vertices;
}

DensityMatrix weighted_direct_sum(double w1, const DensityMatrix& rho1, double w2,
                                  const DensityMatrix& rho2) {
  if (w1 < 0.0 || w2 < 0.0 || std::abs(w1 + w2 - 1.0) > tol::trace)
    raise(ErrorCode::InvalidArgument, "direct-sum weights must be a probability pair");
  const int d1 = rho1.dim(), d2 = rho2.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d1 + d2, d1 + d2);
  m.topLeftCorner(d1, d1) = w1 * rho1.matrix();
  m.bottomRightCorner(d2, d2) = w2 * rho2.matrix();
  return DensityMatrix::trusted(std::move(m));
}

ComplexMatrix random_ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) g(j, k) = Complex(gauss(rng), gauss(rng));
  return g;
}

PureState random_pure_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(dim);
  for (int j = 0; j < dim; ++j) v[j] = Complex(gauss(rng), gauss(rng));
  return PureState::normalized(v);
}

DensityMatrix random_mixed_state(int dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(dim, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::trusted(hermitize(m));
}

DensityMatrix random_zero_phase_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> n_pure(1, 3);
  const int m = n_pure(rng);

  // Dirichlet-uniform weights over m pure components plus one diagonal state.
  std::vector<double> w(static_cast<std::size_t>(m) + 1);
  std::exponential_distribution<double> expo(1.0);
  double wsum = 0.0;
  for (double& wi : w) {
    wi = expo(rng);
    wsum += wi;
  }
  for (double& wi : w) wi /= wsum;

  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < m; ++i) {
    ComplexVector v(dim);
    for (int j = 0; j < dim; ++j) v[j] = Complex(std::abs(gauss(rng)), 0.0);
    v /= v.norm();
    acc += w[static_cast<std::size_t>(i)] * (v * v.adjoint());
  }
  RealVector diag(dim);
  double dsum = 0.0;
  for (int j = 0; j < dim; ++j) {
    diag[j] = expo(rng);
    dsum += diag[j];
  }
  for (int j = 0; j < dim; ++j) acc(j, j) += w.back() * diag[j] / dsum;
  return DensityMatrix::trusted(hermitize(acc));
}

ComplexMatrix random_unitary(int dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    q.col(j) *= std::abs(rjj) > 0.0 ? rjj / std::abs(rjj) : Complex(1.0, 0.0);
  }
  return q;
}

DensityMatrix random_state(int dim, StateKind kind, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (kind == StateKind::Pure) return random_pure_state(dim, rng).projector();
  return random_mixed_state(dim, rng);
}

PureState random_pure_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure_state(dim, rng);
}

DensityMatrix random_zero_phase_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_zero_phase_state(dim, rng);
}

} // namespace phaselab
