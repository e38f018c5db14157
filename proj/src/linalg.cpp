// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "phaselab/errors.hpp"

namespace phaselab {

namespace {

void require_hermitian(const ComplexMatrix& m, const char* where) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << where << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    raise(ErrorCode::DimensionMismatch, msg.str());
  }
  const double defect = hermiticity_defect(m);
  if (defect > tol::hermitian) {
    std::ostringstream msg;
    msg << where << ": hermiticity defect " << defect << " exceeds " << tol::hermitian;
    raise(ErrorCode::NotHermitian, msg.str());
  }
}

} // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

TopSvd svd_top(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues(), svd.matrixU().col(0), svd.matrixV().col(0)};
}

RealVector project_simplex(const RealVector& v, double s) {
  if (s < 0.0) raise(ErrorCode::InvalidArgument, "project_simplex: target sum is negative");
  const Eigen::Index n = v.size();
  if (s == 0.0) return RealVector::Zero(n); // the face {x >= 0, sum x = 0} is the origin
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with sorted[k-1] - (partial_sum - s)/k > 0 gives the threshold.
  double partial = 0.0;
  double theta = (v.sum() - s) / static_cast<double>(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    partial += sorted[static_cast<std::size_t>(k)];
    const double candidate = (partial - s) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) theta = candidate;
  }
  RealVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

ComplexMatrix project_psd_trace(const ComplexMatrix& m, double s) {
  if (s < 0.0) raise(ErrorCode::InvalidArgument, "project_psd_trace: trace target is negative");
  const EigenDecomposition eig = hermitian_eig(m);
  const RealVector lambda = project_simplex(eig.eigenvalues, s);
  return eig.eigenvectors * lambda.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix project_entrywise_feasible(const ComplexMatrix& x, const ComplexMatrix& rho) {
  if (x.rows() != rho.rows() || x.cols() != rho.cols() || x.rows() != x.cols()) {
    std::ostringstream msg;
    msg << "project_entrywise_feasible: shapes " << x.rows() << "x" << x.cols() << " vs "
        << rho.rows() << "x" << rho.cols();
    raise(ErrorCode::DimensionMismatch, msg.str());
  }
  ComplexMatrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.rows(); ++j)
    for (Eigen::Index k = 0; k < x.cols(); ++k)
      out(j, k) = Complex(std::max(x(j, k).real(), -rho(j, k).real()), -rho(j, k).imag());
  return out;
}

} // namespace phaselab
