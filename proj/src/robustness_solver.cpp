// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/robustness_solver.hpp"

#include <cmath>
#include <sstream>

#include "phaselab/errors.hpp"
#include "phaselab/linalg.hpp"

namespace phaselab {

namespace {

// Once consecutive projection pairs move less than this, the iteration has
// converged to the minimum-gap pair (inconsistent case) or is within noise of
// the intersection.
constexpr double kStallTol = 1e-13;

} // namespace

FeasibilityResult feasible_at(const DensityMatrix& rho, double s, int max_iter, double tol) {
  if (s < 0.0) raise(ErrorCode::InvalidArgument, "feasible_at needs s >= 0");
  const ComplexMatrix& r = rho.matrix();
  const int d = rho.dim();

  // Start from the minimal entrywise fix of zero.
  ComplexMatrix x = project_entrywise_feasible(ComplexMatrix::Zero(d, d), r);
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  ComplexMatrix q = ComplexMatrix::Zero(d, d);
  ComplexMatrix y_prev = x, x_prev = x;

  FeasibilityResult result;
  for (int it = 1; it <= max_iter; ++it) {
    const ComplexMatrix y = project_psd_trace(x + p, s);
    p = x + p - y;
    const ComplexMatrix x_next = project_entrywise_feasible(y + q, r);
    q = y + q - x_next;
    x = x_next;

    result.iterations = it;
    result.gap = (y - x).norm();
    if (result.gap <= tol) {
      result.feasible = true;
      result.certificate = y;
      return result;
    }
    const double moved = (y - y_prev).norm() + (x - x_prev).norm();
    if (it > 1 && moved < kStallTol) break;
    y_prev = y;
    x_prev = x;
  }
  result.feasible = false;
  result.certificate = project_psd_trace(x, s);
  return result;
}

RobustnessSolution robustness_solve(const DensityMatrix& rho, double tol) {
  if (tol <= 0.0) raise(ErrorCode::InvalidArgument, "robustness_solve needs tol > 0");
  const int d = rho.dim();
  const ComplexMatrix& r = rho.matrix();

  if (is_zero_phase(rho)) {
    DensityMatrix tau =
        DensityMatrix::trusted(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
    return RobustnessSolution{0.0, std::move(tau), nonnegativity_violation(r), 0, 0.0};
  }

  // Constructive upper bracket: X = conj(rho) + d P_u cancels every imaginary
  // part and lifts each real part by 1, so rho + X >= 0 entrywise.
  const double s_hi = 1.0 + static_cast<double>(d);
  ComplexMatrix x_best = r.conjugate() + ComplexMatrix::Constant(d, d, Complex(1.0, 0.0));
  {
    const double violation = nonnegativity_violation(r + x_best);
    if (violation > tol::feasibility) {
      std::ostringstream msg;
      msg << "constructive upper bound failed with violation " << violation
          << "; this indicates a solver bug";
      raise(ErrorCode::SolverStalled, msg.str());
    }
  }

  double lo = 0.0, hi = s_hi;
  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const FeasibilityResult fr = feasible_at(rho, mid);
    iterations += fr.iterations;
    if (fr.feasible) {
      hi = mid;
      x_best = fr.certificate;
    } else {
      lo = mid;
    }
  }

  DensityMatrix tau = DensityMatrix::trusted(hermitize(x_best) / hi);
  const double residual = nonnegativity_violation(r + hi * tau.matrix());
  if (residual > tol::certificate) {
    std::ostringstream msg;
    msg << "certificate violation " << residual << " exceeds " << tol::certificate;
    raise(ErrorCode::SolverStalled, msg.str());
  }
  return RobustnessSolution{hi, std::move(tau), residual, iterations, hi - lo};
}

} // namespace phaselab
