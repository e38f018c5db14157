// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phaselab/complex_matrix.hpp"
#include "phaselab/config.hpp"
#include "phaselab/states.hpp"

namespace phaselab {

struct FeasibilityResult {
  bool feasible = false;
  ComplexMatrix certificate; // PSD with trace s; entrywise slack within gap of feasible
  double gap = 0.0;          // Frobenius distance between the two set projections
  int iterations = 0;
};

// Decides whether some X >= 0 with tr X = s makes rho + X entrywise
// nonnegative, by Dykstra alternating projections between the PSD-trace
// cone slice and the entrywise-feasible set.
FeasibilityResult feasible_at(const DensityMatrix& rho, double s, int max_iter = 20000,
                              double tol = tol::feasibility);

struct RobustnessSolution {
  double s_star = 0.0;
  DensityMatrix tau;      // mixing state certifying s_star
  double residual = 0.0;  // worst entrywise violation of rho + s_star tau
  int iterations = 0;     // total Dykstra iterations across the bisection
  double bracket_width = 0.0;
};

// min s >= 0 such that rho + s tau is entrywise nonnegative for some state
// tau, by bisection over s with feasible_at as the oracle. The upper bracket
// s = 1 + d is certified constructively by tau = (conj(rho) + d P_u)/(1 + d)
// with P_u the uniform projector, so a bracket always exists.
RobustnessSolution robustness_solve(const DensityMatrix& rho, double tol = tol::bisection);

} // namespace phaselab
