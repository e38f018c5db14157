// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "phaselab/measures.hpp"
#include "phaselab/states.hpp"

namespace phaselab {

// U_theta rho U_theta^dagger with U_theta = diag(e^{i theta_j}); entry (j,k)
// picks up e^{i(theta_j - theta_k)}.
ComplexMatrix apply_gauge(const DensityMatrix& rho, const RealVector& thetas);

// Exact detector of intrinsically zero-phase states: builds the support graph
// over entries with |rho_jk| > tol, assigns angles along a BFS spanning tree
// so that rho_jk = |rho_jk| e^{i(theta_j - theta_k)}, and accepts iff every
// remaining edge is consistent modulo 2pi within tol::angle. Component roots
// are pinned to zero.
std::optional<PhaseProfile> structural_zero_check(const DensityMatrix& rho,
                                                  double tol = tol::zero_phase);

enum class GaugeMethod { Structural, Optimized };

struct GaugeResult {
  double value = 0.0;       // minimized measure over diagonal-unitary gauges
  PhaseProfile profile;     // phase pattern theta with rho_jk ~ |rho_jk| e^{i(theta_j-theta_k)}
  GaugeMethod method = GaugeMethod::Structural;
  int restarts_used = 0;
  bool certified_zero = false;
};

// min over theta of measure(U_theta rho U_theta^dagger). Structurally zero
// states short-circuit to the exact profile. Otherwise multi-start descent:
// closed-form coordinate updates for P1, Nelder-Mead for the robustness
// objective. Reported values are upper bounds on the true minimum.
GaugeResult intrinsic_value(const DensityMatrix& rho, MeasureId measure, int restarts = 32,
                            std::uint64_t seed = 0);

} // namespace phaselab
