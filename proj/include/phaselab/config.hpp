// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace phaselab::tol {

// Shared numerical tolerances. States are trace-normalized with O(1)
// entries, so absolute tolerances are used throughout.
inline constexpr double hermitian = 1e-10;
inline constexpr double zero_phase = 1e-9;
inline constexpr double psd_floor = 1e-9;       // accepted eigenvalue dip below 0
inline constexpr double trace = 1e-9;
inline constexpr double norm = 1e-10;           // pure-state normalization
inline constexpr double rank_one = 1e-9;        // sigma_2/sigma_1 threshold
inline constexpr double channel = 1e-9;         // completeness defect, operator norm
inline constexpr double angle = 1e-7;           // cycle-consistency angle check
inline constexpr double feasibility = 1e-9;     // Dykstra gap
inline constexpr double bisection = 1e-6;       // robustness bracket width
inline constexpr double certificate = 1e-7;     // entrywise slack of returned certificates
inline constexpr double outcome_floor = 1e-12;  // Kraus outcome probability floor
inline constexpr double spectrum_floor = 1e-12; // defect eigenvalues kept in completion

} // namespace phaselab::tol
