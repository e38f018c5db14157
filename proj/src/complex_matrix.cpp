// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/complex_matrix.hpp"

#include <cmath>

namespace phaselab {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (!std::isfinite(m(j, k).real()) || !std::isfinite(m(j, k).imag())) return false;
  return true;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      worst = std::max(worst, std::abs(m(j, k) - std::conj(m(k, j))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint().eval());
}

double max_abs_entry(const ComplexMatrix& m, int* row, int* col) {
  double best = -1.0;
  int bj = 0, bk = 0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (std::abs(m(j, k)) > best) {
        best = std::abs(m(j, k));
        bj = static_cast<int>(j);
        bk = static_cast<int>(k);
      }
  if (row) *row = bj;
  if (col) *col = bk;
  return best < 0.0 ? 0.0 : best;
}

bool entrywise_nonnegative(const ComplexMatrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const Complex z = m(j, k);
      if (z.real() < -tol || std::abs(z.imag()) > tol) return false;
    }
  return true;
}

double nonnegativity_violation(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const Complex z = m(j, k);
      worst = std::max({worst, -z.real(), std::abs(z.imag())});
    }
  return worst;
}

std::uint64_t matrix_digest(const ComplexMatrix& m, std::uint64_t seed) {
  constexpr std::uint64_t prime = 0x100000001b3ull;
  std::uint64_t h = seed;
  auto mix_bytes = [&](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= prime;
    }
  };
  const std::int64_t rows = m.rows(), cols = m.cols();
  mix_bytes(&rows, sizeof rows);
  mix_bytes(&cols, sizeof cols);
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const double re = m(j, k).real(), im = m(j, k).imag();
      mix_bytes(&re, sizeof re);
      mix_bytes(&im, sizeof im);
    }
  return h;
}

} // namespace phaselab
