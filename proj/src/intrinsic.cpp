// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "phaselab/errors.hpp"

namespace phaselab {

ComplexMatrix apply_gauge(const DensityMatrix& rho, const RealVector& thetas) {
  const int d = rho.dim();
  if (thetas.size() != d) raise(ErrorCode::DimensionMismatch, "gauge profile dim mismatch");
  ComplexMatrix out(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      out(j, k) = rho.entry(j, k) * std::polar(1.0, thetas[j] - thetas[k]);
  return out;
}

std::optional<PhaseProfile> structural_zero_check(const DensityMatrix& rho, double tol) {
  const int d = rho.dim();
  RealVector thetas = RealVector::Zero(d);
  std::vector<bool> visited(static_cast<std::size_t>(d), false);

  auto connected = [&](int j, int k) { return rho.modulus(j, k) > tol; };

  for (int root = 0; root < d; ++root) {
    if (visited[static_cast<std::size_t>(root)]) continue;
    visited[static_cast<std::size_t>(root)] = true;
    thetas[root] = 0.0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int j = queue.front();
      queue.pop_front();
      for (int k = 0; k < d; ++k) {
        if (k == j || !connected(j, k) || visited[static_cast<std::size_t>(k)]) continue;
        // rho_jk = |rho_jk| e^{i(theta_j - theta_k)} along the tree edge.
        thetas[k] = thetas[j] - rho.phase_angle(j, k);
        visited[static_cast<std::size_t>(k)] = true;
        queue.push_back(k);
      }
    }
  }

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      if (!connected(j, k)) continue;
      const double defect = wrap_angle_signed(rho.phase_angle(j, k) - (thetas[j] - thetas[k]));
      if (std::abs(defect) > tol::angle) return std::nullopt;
    }
  return PhaseProfile::canonical(std::move(thetas));
}

namespace {

// P1 objective in gauge variables: sum over j != k of
// |rho_jk| (1 - cos(alpha_jk + theta_j - theta_k)).
double p1_objective(const DensityMatrix& rho, const RealVector& thetas) {
  double value = 0.0;
  const int d = rho.dim();
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (j == k) continue;
      const Complex z = rho.entry(j, k) * std::polar(1.0, thetas[j] - thetas[k]);
      value += std::abs(z) - z.real();
    }
  return std::max(value, 0.0);
}

// Exact per-coordinate minimizer: the theta_j terms collapse to
// -2 Re(e^{i theta_j} w_j) with w_j = sum_k rho_jk e^{-i theta_k}.
double p1_coordinate_descent(const DensityMatrix& rho, RealVector& thetas) {
  const int d = rho.dim();
  double value = p1_objective(rho, thetas);
  for (int sweep = 0; sweep < 10000; ++sweep) {
    for (int j = 1; j < d; ++j) { // theta_0 pinned by gauge freedom
      Complex w(0.0, 0.0);
      for (int k = 0; k < d; ++k)
        if (k != j) w += rho.entry(j, k) * std::polar(1.0, -thetas[k]);
      if (std::abs(w) > 0.0) thetas[j] = -std::arg(w);
    }
    const double next = p1_objective(rho, thetas);
    if (value - next < 1e-12) return next;
    value = next;
  }
  return value;
}

struct NelderMeadResult {
  RealVector point;
  double value = 0.0;
};

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& f, RealVector x0,
                             double step, double ftol, int max_evals) {
  const int n = static_cast<int>(x0.size());
  std::vector<RealVector> pts;
  std::vector<double> vals;
  pts.push_back(x0);
  vals.push_back(f(x0));
  int evals = 1;
  for (int i = 0; i < n; ++i) {
    RealVector p = x0;
    p[i] += step;
    pts.push_back(p);
    vals.push_back(f(p));
    ++evals;
  }

  auto order = [&] {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<RealVector> p2;
    std::vector<double> v2;
    for (std::size_t i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  while (evals < max_evals) {
    order();
    if (vals.back() - vals.front() < ftol) break;

    RealVector centroid = RealVector::Zero(n);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const RealVector reflected = centroid + (centroid - pts.back());
    const double fr = f(reflected);
    ++evals;
    if (fr < vals.front()) {
      const RealVector expanded = centroid + 2.0 * (centroid - pts.back());
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        pts.back() = expanded;
        vals.back() = fe;
      } else {
        pts.back() = reflected;
        vals.back() = fr;
      }
    } else if (fr < vals[vals.size() - 2]) {
      pts.back() = reflected;
      vals.back() = fr;
    } else {
      const RealVector contracted = centroid + 0.5 * (pts.back() - centroid);
      const double fc = f(contracted);
      ++evals;
      if (fc < vals.back()) {
        pts.back() = contracted;
        vals.back() = fc;
      } else {
        for (std::size_t i = 1; i < pts.size(); ++i) {
          pts[i] = pts.front() + 0.5 * (pts[i] - pts.front());
          vals[i] = f(pts[i]);
          ++evals;
        }
      }
    }
  }
  order();
  return {pts.front(), vals.front()};
}

} // namespace

GaugeResult intrinsic_value(const DensityMatrix& rho, MeasureId measure, int restarts,
                            std::uint64_t seed) {
  if (restarts < 1) raise(ErrorCode::InvalidArgument, "intrinsic_value needs restarts >= 1");
  const int d = rho.dim();

  if (auto profile = structural_zero_check(rho)) {
    RealVector applied = -profile->thetas();
    const double value = evaluate(measure, DensityMatrix::trusted(hermitize(apply_gauge(rho, applied))));
    return GaugeResult{value, *profile, GaugeMethod::Structural, 0, true};
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  RealVector best_thetas = RealVector::Zero(d);
  double best_value = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    RealVector thetas = RealVector::Zero(d);
    if (r > 0)
      for (int j = 1; j < d; ++j) thetas[j] = angle(rng);

    double value = 0.0;
    if (measure == MeasureId::P1) {
      value = p1_coordinate_descent(rho, thetas);
    } else {
      auto objective = [&](const RealVector& free_angles) {
        RealVector full = RealVector::Zero(d);
        full.tail(d - 1) = free_angles;
        return evaluate(MeasureId::Robustness,
                        DensityMatrix::trusted(hermitize(apply_gauge(rho, full))));
      };
      const NelderMeadResult nm =
          nelder_mead(objective, thetas.tail(d - 1), 0.8, 1e-6, 400 * (d - 1) * (d - 1));
      thetas.tail(d - 1) = nm.point;
      value = nm.value;
    }
    if (value < best_value) {
      best_value = value;
      best_thetas = thetas;
    }
  }

  // Report the phase pattern of rho itself: the gauge that was applied is the
  // negation of the pattern it removes.
  PhaseProfile profile = PhaseProfile::canonical(-best_thetas);
  return GaugeResult{best_value, std::move(profile), GaugeMethod::Optimized, restarts, false};
}

} // namespace phaselab
