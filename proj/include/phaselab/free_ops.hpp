// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phaselab/complex_matrix.hpp"
#include "phaselab/config.hpp"
#include "phaselab/states.hpp"

namespace phaselab {

// A quantum operation {K_mu} with sum K^dagger K <= I. The empty set is a
// valid (sub-unital) operation.
class KrausSet {
public:
  static KrausSet create(int dim, std::vector<ComplexMatrix> operators);

  int dim() const { return dim_; }
  std::size_t size() const { return ops_.size(); }
  const ComplexMatrix& op(std::size_t i) const { return ops_[i]; }
  const std::vector<ComplexMatrix>& operators() const { return ops_; }

  ComplexMatrix completeness_defect() const; // I - sum K^dagger K
  double defect_norm() const;                // operator norm of the defect
  bool is_channel(double tol = tol::channel) const { return defect_norm() <= tol; }

private:
  KrausSet(int dim, std::vector<ComplexMatrix> ops) : dim_(dim), ops_(std::move(ops)) {}
  int dim_;
  std::vector<ComplexMatrix> ops_;
};

enum class OperatorTag { O0Form, O1Form, O2Form, NotFree };

// Two-level probe sigma = p|l><l| + (1-p)|m><m| + x(|l><m| + |m><l|),
// 0 <= x <= sqrt(p(1-p)). These states witness every violation of the
// free-operator form.
struct Witness {
  int l = 0, m = 0;        // probe levels, l < m
  double p = 0.0, x = 0.0; // probe parameters
  int operator_index = -1; // set by classify_operation
  int row = 0, col = 0;    // offending entry of K sigma K^dagger
  double violation = 0.0;  // max(-Re, |Im|) at that entry
};

DensityMatrix probe_state(int dim, int l, int m, double p, double x);

struct OperatorClass {
  OperatorTag tag = OperatorTag::NotFree;
  // O0Form factors: k = s * psi^dagger with s entrywise nonnegative.
  RealVector s;
  ComplexVector psi;
  // O1/O2Form: global phase removed before the nonnegativity test.
  double removed_phase = 0.0;
  std::optional<Witness> witness; // present for NotFree when the scan finds one
};

// Theorem-style classification of one Kraus operator: rank-one with
// nonnegative left factor (O0Form), entrywise nonnegative up to a global
// phase (O1Form, O2Form when additionally column-incoherent), else NotFree.
OperatorClass classify_operator(const ComplexMatrix& k, double tol = tol::rank_one);

// Scans probe states for an entrywise-nonnegativity violation of K sigma
// K^dagger. p runs over a uniform grid including endpoints; x over {0,
// sqrt(p(1-p))}, or a full grid when dense_x is set. First hit in (l, m,
// grid-index) order.
std::optional<Witness> witness_search(const ComplexMatrix& k, int grid = 33,
                                      bool dense_x = false, double tol = tol::zero_phase);

enum class OperationClass { CF, CFprime, NotFree };

struct OperationReport {
  OperationClass cls = OperationClass::NotFree; // tightest class that applies
  bool is_cf = false;        // every operator O0/O1/O2
  bool is_cf_prime = false;  // every operator O0/O2
  bool is_channel = false;
  std::vector<OperatorClass> per_operator;
};

OperationReport classify_operation(const KrausSet& ks);

// Appends rank-one operators |s_lambda><psi_lambda| built from the
// eigendecomposition of the completeness defect, turning the operation into a
// channel. Deterministic |s_lambda> = s_lambda |1> unless a seed is given, in
// which case random nonnegative directions are used.
KrausSet complete_to_channel(const KrausSet& ks,
                             std::optional<std::uint64_t> seed = std::nullopt);

// Channel {|phi><j|}_j mapping every state to the fixed nonnegative target.
KrausSet prop2_channel(const PureState& target);

// Channel {M_j = sum_k |c_k| |k><(k+j) mod d|}_j converting the regular
// maximal state into the state with moduli |c_k| and regular phase pattern.
KrausSet prop3_channel(const RealVector& moduli);

struct Outcome {
  double probability = 0.0;
  std::optional<DensityMatrix> state; // absent when probability < tol::outcome_floor
};

struct ApplyResult {
  std::vector<Outcome> outcomes;
  ComplexMatrix total;      // unnormalized sum K rho K^dagger
  double total_probability; // trace of total
};

ApplyResult apply_operation(const KrausSet& ks, const DensityMatrix& rho);

// Random free channel of the requested class: |Gaussian| O1 operators (CF) or
// one-entry-per-column O2 operators (CFprime), rescaled to sum K^dagger K <=
// 0.9 I and completed to a channel.
KrausSet sample_free_operation(int dim, OperationClass cls, int n_ops, std::uint64_t seed);

} // namespace phaselab
