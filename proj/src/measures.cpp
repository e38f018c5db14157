// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/measures.hpp"

#include <cmath>

#include "phaselab/errors.hpp"
#include "phaselab/robustness_solver.hpp"

namespace phaselab {

double xi(Complex z) {
  return std::max(std::abs(z) - z.real(), 0.0);
}

double p1(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (j != k) sum += xi(m(j, k));
  return sum;
}

double p1_pure(const PureState& psi) {
  double mod_sum = 0.0;
  Complex amp_sum(0.0, 0.0);
  for (int j = 0; j < psi.dim(); ++j) {
    mod_sum += psi.modulus(j);
    amp_sum += psi.amplitudes()[j];
  }
  return std::max(mod_sum * mod_sum - std::norm(amp_sum), 0.0);
}

double p1_coherent_phase_closed(Complex epsilon) {
  const double mod = std::abs(epsilon);
  if (mod > 1.0 - 1e-6) raise(ErrorCode::EpsilonTooLarge, "|epsilon| must stay below 1 - 1e-6");
  const double head = 1.0 - mod * mod;
  const double near = (1.0 - mod) * (1.0 - mod);
  const double far = std::norm(Complex(1.0, 0.0) - epsilon);
  return head * (1.0 / near - 1.0 / far);
}

double robustness_closed_qubit(const DensityMatrix& rho) {
  const BlochVector b = rho_to_bloch(rho); // throws BadDimension unless dim 2
  return b.x >= 0.0 ? std::abs(b.y) : std::hypot(b.x, b.y);
}

double robustness(const DensityMatrix& rho) {
  if (rho.dim() == 2) return robustness_closed_qubit(rho);
  return robustness_solve(rho).s_star;
}

double evaluate(MeasureId measure, const DensityMatrix& rho) {
  return measure == MeasureId::P1 ? p1(rho) : robustness(rho);
}

} // namespace phaselab
