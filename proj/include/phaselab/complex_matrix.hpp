// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace phaselab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

bool all_finite(const ComplexMatrix& m);

// max_jk |m_jk - conj(m_kj)|
double hermiticity_defect(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);

// (m + m^dagger)/2
ComplexMatrix hermitize(const ComplexMatrix& m);

// Largest |m_jk| together with its position.
double max_abs_entry(const ComplexMatrix& m, int* row = nullptr, int* col = nullptr);

// True iff every entry satisfies Re >= -tol and |Im| <= tol.
bool entrywise_nonnegative(const ComplexMatrix& m, double tol);

// Worst entrywise violation of nonnegativity: max(-Re, |Im|) over entries,
// clamped at zero. Zero means entrywise nonnegative.
double nonnegativity_violation(const ComplexMatrix& m);

// FNV-1a over the raw entry bytes plus the dimensions; used for trial digests.
std::uint64_t matrix_digest(const ComplexMatrix& m, std::uint64_t seed = 0xcbf29ce484222325ull);

} // namespace phaselab
