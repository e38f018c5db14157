// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phaselab/complex_matrix.hpp"
#include "phaselab/config.hpp"

namespace phaselab {

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, V diag(lambda) V^dagger == input
};

// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when the
// entrywise defect exceeds tol::hermitian.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

struct TopSvd {
  RealVector singular_values; // descending
  ComplexVector left;         // unit top left singular vector
  ComplexVector right;        // unit top right singular vector
};

TopSvd svd_top(const ComplexMatrix& m);

// Euclidean projection of v onto {x >= 0, sum x = s} by sort-and-threshold
// water filling.
RealVector project_simplex(const RealVector& v, double s);

// Frobenius-nearest Hermitian PSD matrix with trace exactly s.
ComplexMatrix project_psd_trace(const ComplexMatrix& m, double s);

// Frobenius-nearest Hermitian X' such that rho + X' is entrywise nonnegative
// real: Im X'_jk = -Im rho_jk, Re X'_jk = max(Re X_jk, -Re rho_jk).
ComplexMatrix project_entrywise_feasible(const ComplexMatrix& x, const ComplexMatrix& rho);

} // namespace phaselab
