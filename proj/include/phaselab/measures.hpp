// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phaselab/complex_matrix.hpp"
#include "phaselab/states.hpp"

namespace phaselab {

enum class MeasureId { P1, Robustness };

// Per-entry phase penalty |z| - Re z = 2|z| sin^2(theta/2).
double xi(Complex z);

// Sum of xi over all entries (diagonal terms vanish for states).
double p1(const DensityMatrix& rho);

// (sum_j |c_j|)^2 - |sum_j c_j|^2; equals p1 of the projector.
double p1_pure(const PureState& psi);

// Closed form for the geometric-amplitude family:
// (1 - |eps|^2) [ 1/(1-|eps|)^2 - 1/|1-eps|^2 ].
double p1_coherent_phase_closed(Complex epsilon);

// Bloch closed form: |y| when x >= 0, sqrt(x^2+y^2) when x < 0. Dim 2 only.
double robustness_closed_qubit(const DensityMatrix& rho);

// Closed form for qubits, bisection solver otherwise.
double robustness(const DensityMatrix& rho);

double evaluate(MeasureId measure, const DensityMatrix& rho);

} // namespace phaselab
