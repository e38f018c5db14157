// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/phaselab.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "phaselab/errors.hpp"
#include "phaselab/free_ops.hpp"
#include "phaselab/harness.hpp"
#include "phaselab/intrinsic.hpp"
#include "phaselab/measures.hpp"
#include "phaselab/robustness_solver.hpp"
#include "phaselab/states.hpp"

using namespace phaselab;

struct pl_state {
  DensityMatrix rho;
  std::optional<PureState> pure;
};

struct pl_kraus {
  KrausSet ks;
};

namespace {

thread_local std::string g_last_error;

void set_error(std::string message) { g_last_error = std::move(message); }

pl_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return PL_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotHermitian: return PL_ERR_NOT_HERMITIAN;
    case ErrorCode::NotPsd: return PL_ERR_NOT_PSD;
    case ErrorCode::BadTrace: return PL_ERR_BAD_TRACE;
    case ErrorCode::NotNormalized: return PL_ERR_NOT_NORMALIZED;
    case ErrorCode::DimensionMismatch: return PL_ERR_DIMENSION_MISMATCH;
    case ErrorCode::BadDimension: return PL_ERR_BAD_DIMENSION;
    case ErrorCode::BlochOutOfBall: return PL_ERR_BLOCH_OUT_OF_BALL;
    case ErrorCode::EpsilonTooLarge: return PL_ERR_EPSILON_TOO_LARGE;
    case ErrorCode::NotEquimodular: return PL_ERR_NOT_EQUIMODULAR;
    case ErrorCode::NotSubnormalized: return PL_ERR_NOT_SUBNORMALIZED;
    case ErrorCode::TargetNotNonnegative: return PL_ERR_TARGET_NOT_NONNEGATIVE;
    case ErrorCode::SolverStalled: return PL_ERR_SOLVER_STALLED;
    case ErrorCode::ParseError: return PL_ERR_PARSE;
  }
  return PL_ERR_INTERNAL;
}

template <typename Fn>
pl_status guarded(Fn&& fn) noexcept {
  try {
    return fn();
  } catch (const Error& e) {
    set_error(e.what());
    return map_code(e.code());
  } catch (const std::exception& e) {
    set_error(e.what());
    return PL_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return PL_ERR_INTERNAL;
  }
}

pl_status require(bool ok, const char* message) {
  if (ok) return PL_OK;
  set_error(message);
  return PL_ERR_INVALID_ARGUMENT;
}

ComplexMatrix matrix_from_reim(int dim, const double* reim) {
  ComplexMatrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      const int at = 2 * (j * dim + k);
      m(j, k) = Complex(reim[at], reim[at + 1]);
    }
  return m;
}

void matrix_to_reim(const ComplexMatrix& m, double* reim) {
  const int dim = static_cast<int>(m.rows());
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      const int at = 2 * (j * dim + k);
      reim[at] = m(j, k).real();
      reim[at + 1] = m(j, k).imag();
    }
}

ComplexVector vector_from_reim(int dim, const double* reim) {
  ComplexVector v(dim);
  for (int j = 0; j < dim; ++j) v[j] = Complex(reim[2 * j], reim[2 * j + 1]);
  return v;
}

void vector_to_reim(const ComplexVector& v, double* reim) {
  for (int j = 0; j < v.size(); ++j) {
    reim[2 * j] = v[j].real();
    reim[2 * j + 1] = v[j].imag();
  }
}

pl_state* make_state(DensityMatrix rho, std::optional<PureState> pure = std::nullopt) {
  return new pl_state{std::move(rho), std::move(pure)};
}

void fill_witness(const Witness& w, pl_witness* out) {
  out->l = w.l;
  out->m = w.m;
  out->p = w.p;
  out->x = w.x;
  out->operator_index = w.operator_index;
  out->row = w.row;
  out->col = w.col;
  out->violation = w.violation;
}

MeasureId to_measure(int measure) {
  if (measure == PL_MEASURE_P1) return MeasureId::P1;
  if (measure == PL_MEASURE_ROBUSTNESS) return MeasureId::Robustness;
  raise(ErrorCode::InvalidArgument, "unknown measure id");
}

Axiom to_axiom(int axiom) {
  switch (axiom) {
    case PL_AXIOM_P1: return Axiom::P1;
    case PL_AXIOM_P2: return Axiom::P2;
    case PL_AXIOM_P3: return Axiom::P3;
    case PL_AXIOM_P4: return Axiom::P4;
    case PL_AXIOM_P5: return Axiom::P5;
    case PL_AXIOM_CONJ_INV: return Axiom::ConjInv;
    case PL_AXIOM_PERM_INV: return Axiom::PermInv;
  }
  raise(ErrorCode::InvalidArgument, "unknown axiom id");
}

} // namespace

extern "C" {

const char* pl_last_error(void) { return g_last_error.c_str(); }

const char* pl_version(void) { return "0.1.0"; }

pl_status pl_state_create(int dim, const double* reim, pl_state** out) {
  if (pl_status st = require(reim && out && dim >= 1, "pl_state_create: bad arguments")) return st;
  return guarded([&] {
    *out = make_state(DensityMatrix::validate(matrix_from_reim(dim, reim)));
    return PL_OK;
  });
}

pl_status pl_state_create_pure(int dim, const double* amps_reim, pl_state** out) {
  if (pl_status st = require(amps_reim && out && dim >= 1, "pl_state_create_pure: bad arguments"))
    return st;
  return guarded([&] {
    PureState psi = PureState::validate(vector_from_reim(dim, amps_reim));
    *out = make_state(psi.projector(), psi);
    return PL_OK;
  });
}

void pl_state_free(pl_state* state) { delete state; }

int pl_state_dim(const pl_state* state) { return state ? state->rho.dim() : 0; }

int pl_state_has_vector(const pl_state* state) { return state && state->pure ? 1 : 0; }

pl_status pl_state_get_matrix(const pl_state* state, double* reim) {
  if (pl_status st = require(state && reim, "pl_state_get_matrix: bad arguments")) return st;
  matrix_to_reim(state->rho.matrix(), reim);
  return PL_OK;
}

pl_status pl_state_get_vector(const pl_state* state, double* amps_reim) {
  if (pl_status st = require(state && amps_reim, "pl_state_get_vector: bad arguments")) return st;
  if (!state->pure) {
    set_error("state handle carries no amplitude vector");
    return PL_ERR_INVALID_ARGUMENT;
  }
  vector_to_reim(state->pure->amplitudes(), amps_reim);
  return PL_OK;
}

pl_status pl_state_random(int dim, int pure, uint64_t seed, pl_state** out) {
  if (pl_status st = require(out && dim >= 1, "pl_state_random: bad arguments")) return st;
  return guarded([&] {
    if (pure) {
      PureState psi = random_pure_state(dim, seed);
      *out = make_state(psi.projector(), psi);
    } else {
      *out = make_state(random_state(dim, StateKind::Mixed, seed));
    }
    return PL_OK;
  });
}

pl_status pl_state_max_phase(int dim, int regular, uint64_t seed, pl_state** out) {
  if (pl_status st = require(out != nullptr, "pl_state_max_phase: bad arguments")) return st;
  return guarded([&] {
    PureState psi =
        max_phase_state(dim, regular ? MaxStateVariant::Regular : MaxStateVariant::Random, seed);
    *out = make_state(psi.projector(), psi);
    return PL_OK;
  });
}

pl_status pl_state_coherent(double eps_re, double eps_im, int trunc_dim, pl_state** out,
                            double* truncation_weight) {
  if (pl_status st = require(out != nullptr, "pl_state_coherent: bad arguments")) return st;
  return guarded([&] {
    CoherentPhaseState cps = coherent_phase_state(Complex(eps_re, eps_im), trunc_dim);
    if (truncation_weight) *truncation_weight = cps.truncation_weight;
    *out = make_state(cps.state.projector(), cps.state);
    return PL_OK;
  });
}

pl_status pl_state_from_bloch(double x, double y, double z, pl_state** out) {
  if (pl_status st = require(out != nullptr, "pl_state_from_bloch: bad arguments")) return st;
  return guarded([&] {
    *out = make_state(bloch_to_rho({x, y, z}));
    return PL_OK;
  });
}

pl_status pl_state_to_bloch(const pl_state* state, double* x, double* y, double* z) {
  if (pl_status st = require(state && x && y && z, "pl_state_to_bloch: bad arguments")) return st;
  return guarded([&] {
    const BlochVector b = rho_to_bloch(state->rho);
    *x = b.x;
    *y = b.y;
    *z = b.z;
    return PL_OK;
  });
}

pl_status pl_state_is_zero_phase(const pl_state* state, double tol, int* out) {
  if (pl_status st = require(state && out, "pl_state_is_zero_phase: bad arguments")) return st;
  *out = is_zero_phase(state->rho, tol > 0.0 ? tol : tol::zero_phase) ? 1 : 0;
  return PL_OK;
}

pl_status pl_state_conjugate(const pl_state* state, pl_state** out) {
  if (pl_status st = require(state && out, "pl_state_conjugate: bad arguments")) return st;
  return guarded([&] {
    *out = make_state(state->rho.conjugate());
    return PL_OK;
  });
}

pl_status pl_polygon_vertices(const pl_state* state, double* vertices_reim) {
  if (pl_status st = require(state && vertices_reim, "pl_polygon_vertices: bad arguments"))
    return st;
  return guarded([&] {
    if (!state->pure)
      raise(ErrorCode::NotEquimodular, "polygon form needs a pure amplitude vector");
    const std::vector<Complex> vertices = polygon_vertices(*state->pure);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      vertices_reim[2 * i] = vertices[i].real();
      vertices_reim[2 * i + 1] = vertices[i].imag();
    }
    return PL_OK;
  });
}

pl_status pl_measure_p1(const pl_state* state, double* out) {
  if (pl_status st = require(state && out, "pl_measure_p1: bad arguments")) return st;
  return guarded([&] {
    *out = p1(state->rho);
    return PL_OK;
  });
}

pl_status pl_measure_p1_pure(const pl_state* state, double* out) {
  if (pl_status st = require(state && out, "pl_measure_p1_pure: bad arguments")) return st;
  return guarded([&] {
    if (!state->pure) raise(ErrorCode::InvalidArgument, "state carries no amplitude vector");
    *out = p1_pure(*state->pure);
    return PL_OK;
  });
}

pl_status pl_p1_coherent_closed(double eps_re, double eps_im, double* out) {
  if (pl_status st = require(out != nullptr, "pl_p1_coherent_closed: bad arguments")) return st;
  return guarded([&] {
    *out = p1_coherent_phase_closed(Complex(eps_re, eps_im));
    return PL_OK;
  });
}

pl_status pl_measure_robustness(const pl_state* state, double* out) {
  if (pl_status st = require(state && out, "pl_measure_robustness: bad arguments")) return st;
  return guarded([&] {
    *out = robustness(state->rho);
    return PL_OK;
  });
}

pl_status pl_robustness_closed_qubit(const pl_state* state, double* out) {
  if (pl_status st = require(state && out, "pl_robustness_closed_qubit: bad arguments")) return st;
  return guarded([&] {
    *out = robustness_closed_qubit(state->rho);
    return PL_OK;
  });
}

pl_status pl_robustness_solve(const pl_state* state, double tol, double* s_star, pl_state** tau,
                              double* residual, int* iterations) {
  if (pl_status st = require(state && s_star, "pl_robustness_solve: bad arguments")) return st;
  return guarded([&] {
    RobustnessSolution sol = robustness_solve(state->rho, tol > 0.0 ? tol : tol::bisection);
    *s_star = sol.s_star;
    if (tau) *tau = make_state(std::move(sol.tau));
    if (residual) *residual = sol.residual;
    if (iterations) *iterations = sol.iterations;
    return PL_OK;
  });
}

pl_status pl_kraus_create(int dim, int count, const double* ops_reim, pl_kraus** out) {
  if (pl_status st =
          require(out && dim >= 1 && count >= 0 && (count == 0 || ops_reim),
                  "pl_kraus_create: bad arguments"))
    return st;
  return guarded([&] {
    std::vector<ComplexMatrix> ops;
    ops.reserve(static_cast<std::size_t>(count));
    const int stride = 2 * dim * dim;
    for (int i = 0; i < count; ++i) ops.push_back(matrix_from_reim(dim, ops_reim + i * stride));
    *out = new pl_kraus{KrausSet::create(dim, std::move(ops))};
    return PL_OK;
  });
}

void pl_kraus_free(pl_kraus* ks) { delete ks; }

int pl_kraus_dim(const pl_kraus* ks) { return ks ? ks->ks.dim() : 0; }

int pl_kraus_count(const pl_kraus* ks) { return ks ? static_cast<int>(ks->ks.size()) : 0; }

pl_status pl_kraus_get(const pl_kraus* ks, int index, double* reim) {
  if (pl_status st = require(ks && reim && index >= 0 &&
                                 index < static_cast<int>(ks->ks.size()),
                             "pl_kraus_get: bad arguments"))
    return st;
  matrix_to_reim(ks->ks.op(static_cast<std::size_t>(index)), reim);
  return PL_OK;
}

pl_status pl_kraus_is_channel(const pl_kraus* ks, int* out) {
  if (pl_status st = require(ks && out, "pl_kraus_is_channel: bad arguments")) return st;
  return guarded([&] {
    *out = ks->ks.is_channel() ? 1 : 0;
    return PL_OK;
  });
}

pl_status pl_classify_operation(const pl_kraus* ks, pl_operation_report* report,
                                pl_operator_report* per_operator) {
  if (pl_status st = require(ks && report, "pl_classify_operation: bad arguments")) return st;
  return guarded([&] {
    const OperationReport r = classify_operation(ks->ks);
    report->cls = r.cls == OperationClass::CF        ? PL_CLASS_CF
                  : r.cls == OperationClass::CFprime ? PL_CLASS_CF_PRIME
                                                     : PL_CLASS_NOT_FREE;
    report->is_cf = r.is_cf ? 1 : 0;
    report->is_cf_prime = r.is_cf_prime ? 1 : 0;
    report->is_channel = r.is_channel ? 1 : 0;
    if (per_operator) {
      for (std::size_t i = 0; i < r.per_operator.size(); ++i) {
        const OperatorClass& oc = r.per_operator[i];
        pl_operator_report& op = per_operator[i];
        op.tag = oc.tag == OperatorTag::O0Form   ? PL_OP_O0
                 : oc.tag == OperatorTag::O1Form ? PL_OP_O1
                 : oc.tag == OperatorTag::O2Form ? PL_OP_O2
                                                 : PL_OP_NOT_FREE;
        op.removed_phase = oc.removed_phase;
        op.has_witness = oc.witness ? 1 : 0;
        if (oc.witness) fill_witness(*oc.witness, &op.witness);
        else std::memset(&op.witness, 0, sizeof op.witness);
      }
    }
    return PL_OK;
  });
}

pl_status pl_classify_operator_factors(const pl_kraus* ks, int index, double* s,
                                       double* psi_reim) {
  if (pl_status st = require(ks && s && psi_reim && index >= 0 &&
                                 index < static_cast<int>(ks->ks.size()),
                             "pl_classify_operator_factors: bad arguments"))
    return st;
  return guarded([&] {
    const OperatorClass oc = classify_operator(ks->ks.op(static_cast<std::size_t>(index)));
    if (oc.tag != OperatorTag::O0Form)
      raise(ErrorCode::InvalidArgument, "operator did not classify O0Form");
    for (int j = 0; j < ks->ks.dim(); ++j) s[j] = oc.s[j];
    vector_to_reim(oc.psi, psi_reim);
    return PL_OK;
  });
}

pl_status pl_complete_to_channel(const pl_kraus* ks, int use_seed, uint64_t seed,
                                 pl_kraus** out) {
  if (pl_status st = require(ks && out, "pl_complete_to_channel: bad arguments")) return st;
  return guarded([&] {
    std::optional<std::uint64_t> s;
    if (use_seed) s = seed;
    *out = new pl_kraus{complete_to_channel(ks->ks, s)};
    return PL_OK;
  });
}

pl_status pl_prop2_channel(const pl_state* target, pl_kraus** out) {
  if (pl_status st = require(target && out, "pl_prop2_channel: bad arguments")) return st;
  return guarded([&] {
    if (!target->pure)
      raise(ErrorCode::TargetNotNonnegative, "prop2 target must be a pure amplitude vector");
    *out = new pl_kraus{prop2_channel(*target->pure)};
    return PL_OK;
  });
}

pl_status pl_prop3_channel(int dim, const double* moduli, pl_kraus** out) {
  if (pl_status st = require(moduli && out && dim >= 1, "pl_prop3_channel: bad arguments"))
    return st;
  return guarded([&] {
    RealVector m(dim);
    for (int j = 0; j < dim; ++j) m[j] = moduli[j];
    *out = new pl_kraus{prop3_channel(m)};
    return PL_OK;
  });
}

pl_status pl_sample_free_operation(int dim, int cls, int n_ops, uint64_t seed, pl_kraus** out) {
  if (pl_status st = require(out != nullptr, "pl_sample_free_operation: bad arguments")) return st;
  return guarded([&] {
    OperationClass c;
    if (cls == PL_CLASS_CF) c = OperationClass::CF;
    else if (cls == PL_CLASS_CF_PRIME) c = OperationClass::CFprime;
    else raise(ErrorCode::InvalidArgument, "can only sample CF or CFprime");
    *out = new pl_kraus{sample_free_operation(dim, c, n_ops, seed)};
    return PL_OK;
  });
}

pl_status pl_apply_operation(const pl_kraus* ks, const pl_state* rho, double* probabilities,
                             double* total_reim, double* total_probability) {
  if (pl_status st = require(ks && rho && probabilities, "pl_apply_operation: bad arguments"))
    return st;
  return guarded([&] {
    const ApplyResult applied = apply_operation(ks->ks, rho->rho);
    for (std::size_t i = 0; i < applied.outcomes.size(); ++i)
      probabilities[i] = applied.outcomes[i].probability;
    if (total_reim) matrix_to_reim(applied.total, total_reim);
    if (total_probability) *total_probability = applied.total_probability;
    return PL_OK;
  });
}

pl_status pl_apply_outcome(const pl_kraus* ks, const pl_state* rho, int index,
                           double* probability, pl_state** normalized) {
  if (pl_status st = require(ks && rho && probability && normalized &&
                                 index >= 0 && index < static_cast<int>(ks->ks.size()),
                             "pl_apply_outcome: bad arguments"))
    return st;
  return guarded([&] {
    const ApplyResult applied = apply_operation(ks->ks, rho->rho);
    const Outcome& outcome = applied.outcomes[static_cast<std::size_t>(index)];
    *probability = outcome.probability;
    *normalized = outcome.state ? make_state(*outcome.state) : nullptr;
    return PL_OK;
  });
}

pl_status pl_intrinsic_value(const pl_state* state, int measure, int restarts, uint64_t seed,
                             pl_gauge_report* report, double* thetas) {
  if (pl_status st = require(state && report, "pl_intrinsic_value: bad arguments")) return st;
  return guarded([&] {
    const GaugeResult r = intrinsic_value(state->rho, to_measure(measure), restarts, seed);
    report->value = r.value;
    report->method = r.method == GaugeMethod::Structural ? 0 : 1;
    report->certified_zero = r.certified_zero ? 1 : 0;
    report->restarts_used = r.restarts_used;
    if (thetas)
      for (int j = 0; j < r.profile.dim(); ++j) thetas[j] = r.profile.thetas()[j];
    return PL_OK;
  });
}

pl_status pl_structural_zero_check(const pl_state* state, double tol, int* found,
                                   double* thetas) {
  if (pl_status st = require(state && found, "pl_structural_zero_check: bad arguments")) return st;
  return guarded([&] {
    const auto profile =
        structural_zero_check(state->rho, tol > 0.0 ? tol : tol::zero_phase);
    *found = profile ? 1 : 0;
    if (profile && thetas)
      for (int j = 0; j < profile->dim(); ++j) thetas[j] = profile->thetas()[j];
    return PL_OK;
  });
}

pl_status pl_check_axiom(int measure, int axiom, int trials, uint64_t seed, const int* dims,
                         int n_dims, int exploratory_cf, pl_check_report* reports) {
  if (pl_status st = require(dims && reports && n_dims >= 1 && trials >= 1,
                             "pl_check_axiom: bad arguments"))
    return st;
  return guarded([&] {
    HarnessOptions options;
    options.exploratory_cf_for_p1 = exploratory_cf != 0;
    const std::vector<CheckReport> rs =
        check_axiom(to_measure(measure), to_axiom(axiom), trials, seed,
                    std::span<const int>(dims, static_cast<std::size_t>(n_dims)), options);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const CheckReport& r = rs[i];
      reports[i].axiom = axiom;
      reports[i].measure = measure;
      reports[i].trial_seed = r.trial_seed;
      reports[i].margin = r.margin;
      reports[i].inputs_digest = r.inputs_digest;
      reports[i].passed = r.passed ? 1 : 0;
    }
    return PL_OK;
  });
}

} // extern "C"
