// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "phaselab/complex_matrix.hpp"
#include "phaselab/config.hpp"

namespace phaselab {

// Validated density matrix: Hermitian within tol::hermitian, eigenvalues above
// -tol::psd_floor, trace within tol::trace of one. Stored hermitized.
class DensityMatrix {
public:
  static DensityMatrix validate(const ComplexMatrix& m);

  // Skips validation; caller guarantees the invariants (used by samplers and
  // constructors whose output is a state by construction).
  static DensityMatrix trusted(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  Complex entry(int j, int k) const { return m_(j, k); }
  double modulus(int j, int k) const { return std::abs(m_(j, k)); }
  double phase_angle(int j, int k) const { return std::arg(m_(j, k)); }

  // Entrywise complex conjugate, again a valid state.
  DensityMatrix conjugate() const { return DensityMatrix(m_.conjugate()); }

private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

DensityMatrix validate_density(const ComplexMatrix& m);

class PureState {
public:
  // Throws NotNormalized when the amplitude norm is off by more than tol::norm.
  static PureState validate(const ComplexVector& amplitudes);

  // Rescales to unit norm; throws InvalidArgument on the zero vector.
  static PureState normalized(const ComplexVector& amplitudes);

  const ComplexVector& amplitudes() const { return c_; }
  int dim() const { return static_cast<int>(c_.size()); }
  double modulus(int j) const { return std::abs(c_[j]); }
  double phase_angle(int j) const { return std::arg(c_[j]); }

  DensityMatrix projector() const;

private:
  explicit PureState(ComplexVector c) : c_(std::move(c)) {}
  ComplexVector c_;
};

struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Gauge angles theta_1..theta_d, canonicalized to [0, 2pi) with theta_1 = 0.
class PhaseProfile {
public:
  PhaseProfile() = default; // empty until assigned

  static PhaseProfile canonical(RealVector thetas);

  const RealVector& thetas() const { return thetas_; }
  int dim() const { return static_cast<int>(thetas_.size()); }

private:
  explicit PhaseProfile(RealVector t) : thetas_(std::move(t)) {}
  RealVector thetas_;
};

// Wraps an angle into [0, 2pi).
double wrap_angle(double theta);
// Wraps an angle difference into (-pi, pi].
double wrap_angle_signed(double theta);

bool is_zero_phase(const ComplexMatrix& m, double tol = tol::zero_phase);
bool is_zero_phase(const DensityMatrix& rho, double tol = tol::zero_phase);

DensityMatrix bloch_to_rho(const BlochVector& b);
BlochVector rho_to_bloch(const DensityMatrix& rho);

struct CoherentPhaseState {
  PureState state;
  double truncation_weight; // probability mass discarded by the cutoff
};

// Truncation of the geometric-amplitude family c_j ~ eps^j, |eps| < 1,
// renormalized over the first trunc_dim levels.
CoherentPhaseState coherent_phase_state(Complex epsilon, int trunc_dim);

enum class MaxStateVariant { Regular, Random };

// Equimodular pure state whose amplitude phases sum to zero as unit vectors.
// Regular: theta_j = (j-1) 2pi/d. Random: composes antipodal pairs and
// equilateral triples of unit vectors, each rotated by a random angle.
PureState max_phase_state(int dim, MaxStateVariant variant, std::uint64_t seed = 0);

// Vertices M_0..M_d of the polygon walk M_j = M_{j-1} + |c_j| e^{i theta_j}
// over the standard-form (sorted, first angle zero) phases. Requires all
// moduli equal within tol::zero_phase; closes at the origin for maximal states.
std::vector<Complex> polygon_vertices(const PureState& psi);

// Block-diagonal embedding w1 rho1 (+) w2 rho2, w1 + w2 = 1; the direct-sum
// state whose measure splits additively.
DensityMatrix weighted_direct_sum(double w1, const DensityMatrix& rho1, double w2,
                                  const DensityMatrix& rho2);

enum class StateKind { Pure, Mixed };

DensityMatrix random_state(int dim, StateKind kind, std::uint64_t seed);
PureState random_pure_state(int dim, std::uint64_t seed);

// Convex mixture of entrywise-nonnegative pure states and a diagonal state;
// zero-phase by convexity.
DensityMatrix random_zero_phase_state(int dim, std::uint64_t seed);

// Same generators on a caller-owned engine, for callers drawing many samples.
ComplexMatrix random_ginibre(int dim, std::mt19937_64& rng);
PureState random_pure_state(int dim, std::mt19937_64& rng);
DensityMatrix random_mixed_state(int dim, std::mt19937_64& rng);
DensityMatrix random_zero_phase_state(int dim, std::mt19937_64& rng);
ComplexMatrix random_unitary(int dim, std::mt19937_64& rng); // Haar via Ginibre QR

} // namespace phaselab
