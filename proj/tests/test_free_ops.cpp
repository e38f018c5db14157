// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/free_ops.hpp"

#include <doctest.h>
#include <numbers>
#include <random>

#include "phaselab/errors.hpp"
#include "phaselab/linalg.hpp"
#include "test_helpers.hpp"

using namespace phaselab;
using phaselab::testing::matrix2;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix hadamard() {
  return matrix2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
}

// Direct evaluation oracle: K sigma K^dagger through plain matrix products.
ComplexMatrix conjugate_by(const ComplexMatrix& k, const DensityMatrix& sigma) {
  return k * sigma.matrix() * k.adjoint();
}

std::vector<std::vector<int>> permutations(int d) {
  std::vector<int> base(static_cast<std::size_t>(d));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

ComplexMatrix permutation_matrix(const std::vector<int>& perm) {
  const int d = static_cast<int>(perm.size());
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) p(perm[static_cast<std::size_t>(j)], j) = 1.0;
  return p;
}

} // namespace

TEST_CASE("probe states are valid and zero-phase") {
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    const double xmax = std::sqrt(p * (1.0 - p));
    for (double x : {0.0, xmax}) {
      const DensityMatrix sigma = probe_state(4, 1, 3, p, x);
      CHECK_NOTHROW(validate_density(sigma.matrix()));
      CHECK(is_zero_phase(sigma));
    }
  }
  CHECK_THROWS_AS(probe_state(2, 0, 1, 0.5, 0.9), Error);
}

TEST_CASE("classify rank-one operators as O0") {
  // |0><psi| with psi = (1, i)/sqrt(2)
  ComplexMatrix k = ComplexMatrix::Zero(2, 2);
  k(0, 0) = kInvSqrt2;
  k(0, 1) = Complex(0.0, -kInvSqrt2); // <psi| = conj of amplitudes
  const OperatorClass oc = classify_operator(k);
  REQUIRE(oc.tag == OperatorTag::O0Form);
  // factors rebuild the operator
  ComplexMatrix rebuilt(2, 2);
  for (int j = 0; j < 2; ++j)
    for (int c = 0; c < 2; ++c) rebuilt(j, c) = oc.s[j] * std::conj(oc.psi[c]);
  CHECK((rebuilt - k).norm() < 1e-9);
  CHECK(oc.s.minCoeff() >= 0.0);
}

TEST_CASE("classify global-phase nonnegative operators as O1") {
  const ComplexMatrix k = std::polar(1.0, std::numbers::pi / 3.0) *
                          matrix2(0.5, 0.0, 0.0, 0.5);
  const OperatorClass oc = classify_operator(k);
  REQUIRE(oc.tag == OperatorTag::O2Form); // diagonal, hence also incoherent
  CHECK(oc.removed_phase == doctest::Approx(std::numbers::pi / 3.0));

  // a dense nonnegative operator stays O1
  const ComplexMatrix dense = 0.45 * matrix2(1.0, 0.4, 0.7, 1.0);
  CHECK(classify_operator(dense).tag == OperatorTag::O1Form);

  // zero operator is vacuously free
  const OperatorClass zero = classify_operator(ComplexMatrix::Zero(2, 2));
  CHECK((zero.tag == OperatorTag::O1Form || zero.tag == OperatorTag::O2Form));
}

TEST_CASE("classify Hadamard as NotFree with a confirmed witness") {
  const OperatorClass oc = classify_operator(hadamard());
  REQUIRE(oc.tag == OperatorTag::NotFree);
  REQUIRE(oc.witness.has_value());
  const Witness& w = *oc.witness;
  CHECK(w.l == 0);
  CHECK(w.m == 1);
  // recompute the image at the witness probe and confirm the violation
  const ComplexMatrix image = conjugate_by(hadamard(), probe_state(2, w.l, w.m, w.p, w.x));
  const Complex z = image(w.row, w.col);
  CHECK(std::max(-z.real(), std::abs(z.imag())) == doctest::Approx(w.violation));
  CHECK(w.violation > 1e-8);
}

TEST_CASE("witness search") {
  // conjugating by an entrywise nonnegative matrix preserves nonnegativity
  CHECK_FALSE(witness_search(matrix2(0.5, 0.2, 0.1, 0.6)).has_value());

  const auto w = witness_search(matrix2(1.0, 0.0, 0.0, Complex(0.0, 1.0)));
  REQUIRE(w.has_value());
  const ComplexMatrix image = conjugate_by(matrix2(1.0, 0.0, 0.0, Complex(0.0, 1.0)),
                                           probe_state(2, w->l, w->m, w->p, w->x));
  CHECK(std::abs(image(w->row, w->col).imag()) > 1e-8); // imaginary off-diagonal

  // |0><psi| sends every probe to a nonnegative multiple of |0><0|
  ComplexMatrix k = ComplexMatrix::Zero(2, 2);
  k(0, 0) = 0.3;
  k(0, 1) = Complex(0.2, 0.7);
  CHECK_FALSE(witness_search(k).has_value());
}

TEST_CASE("classify_operation on fixed sets") {
  // permutation channel: free in both senses
  const KrausSet perm = KrausSet::create(3, {permutation_matrix({2, 0, 1})});
  const OperationReport pr = classify_operation(perm);
  CHECK(pr.is_cf);
  CHECK(pr.is_cf_prime);
  CHECK(pr.cls == OperationClass::CFprime);
  CHECK(pr.is_channel);

  // {I/sqrt2, H/sqrt2} is a channel but not free
  const KrausSet had = KrausSet::create(
      2, {kInvSqrt2 * ComplexMatrix::Identity(2, 2), kInvSqrt2 * hadamard()});
  const OperationReport hr = classify_operation(had);
  CHECK(hr.cls == OperationClass::NotFree);
  CHECK(hr.is_channel);
  REQUIRE(hr.per_operator.size() == 2);
  CHECK(hr.per_operator[1].tag == OperatorTag::NotFree);
  REQUIRE(hr.per_operator[1].witness.has_value());
  CHECK(hr.per_operator[1].witness->operator_index == 1);

  // the empty operation is vacuously free and not a channel
  const KrausSet empty = KrausSet::create(2, {});
  const OperationReport er = classify_operation(empty);
  CHECK(er.is_cf);
  CHECK(er.is_cf_prime);
  CHECK_FALSE(er.is_channel);
}

TEST_CASE("classifier is invariant under a global phase") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const std::vector<ComplexMatrix> fixtures = {
      hadamard(), matrix2(0.5, 0.2, 0.1, 0.6), permutation_matrix({1, 0}),
      matrix2(0.0, 0.3, 0.0, Complex(0.0, 0.4))};
  for (const ComplexMatrix& k : fixtures) {
    const OperatorTag base = classify_operator(k).tag;
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix rotated = std::polar(1.0, angle(rng)) * k;
      CHECK(classify_operator(rotated).tag == base);
    }
  }
}

TEST_CASE("complete_to_channel") {
  // channels stay unchanged
  const KrausSet perm = KrausSet::create(2, {permutation_matrix({1, 0})});
  CHECK(complete_to_channel(perm).size() == 1);

  // defect (3/4) I yields two appended O0 operators of norm sqrt(3)/2
  const KrausSet half = KrausSet::create(2, {0.5 * ComplexMatrix::Identity(2, 2)});
  const KrausSet completed = complete_to_channel(half);
  REQUIRE(completed.size() == 3);
  CHECK(completed.is_channel());
  for (std::size_t i = 1; i < 3; ++i) {
    const OperatorClass oc = classify_operator(completed.op(i));
    CHECK(oc.tag == OperatorTag::O0Form);
    CHECK(completed.op(i).norm() == doctest::Approx(std::sqrt(3.0) / 2.0));
  }

  // nonnegative operation completes to a CF channel
  const KrausSet l = KrausSet::create(2, {0.9 * matrix2(0.6, 0.3, 0.4, 0.7)});
  const OperationReport lr = classify_operation(complete_to_channel(l));
  CHECK(lr.is_cf);
  CHECK(lr.is_channel);

  // seeded completion also lands on a channel with O0 additions
  const KrausSet seeded = complete_to_channel(half, 77);
  CHECK(seeded.is_channel());
  for (std::size_t i = 1; i < seeded.size(); ++i)
    CHECK(classify_operator(seeded.op(i)).tag == OperatorTag::O0Form);

  CHECK_THROWS_AS(KrausSet::create(2, {1.1 * ComplexMatrix::Identity(2, 2)}), Error);
}

TEST_CASE("prop2 channel maps everything to the target") {
  ComplexVector zero_amps(3);
  zero_amps << 1.0, 0.0, 0.0;
  const PureState zero = PureState::validate(zero_amps);
  const KrausSet ch = prop2_channel(zero);
  CHECK(ch.is_channel());

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_mixed_state(3, rng);
    const ApplyResult applied = apply_operation(ch, rho);
    CHECK((applied.total - zero.projector().matrix()).norm() < 1e-10);
  }

  // nonnegative target with mixed weights, fed the maximal-phase state
  ComplexVector plus_amps(3);
  plus_amps << std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2);
  const PureState plus = PureState::validate(plus_amps);
  const KrausSet ch2 = prop2_channel(plus);
  const ApplyResult applied =
      apply_operation(ch2, max_phase_state(3, MaxStateVariant::Regular).projector());
  CHECK((applied.total - plus.projector().matrix()).norm() < 1e-10);
  CHECK(classify_operation(ch2).is_cf_prime);

  ComplexVector bad(2);
  bad << kInvSqrt2, -kInvSqrt2;
  CHECK_THROWS_AS(prop2_channel(PureState::validate(bad)), Error);
}

TEST_CASE("prop3 channel converts the maximal state") {
  // single-column operators select one basis state
  RealVector basis(3);
  basis << 1.0, 0.0, 0.0;
  const KrausSet ch0 = prop3_channel(basis);
  CHECK(ch0.is_channel());
  const ApplyResult r0 =
      apply_operation(ch0, max_phase_state(3, MaxStateVariant::Regular).projector());
  ComplexMatrix want0 = ComplexMatrix::Zero(3, 3);
  want0(0, 0) = 1.0;
  CHECK((r0.total - want0).norm() < 1e-10);

  // uniform moduli reproduce the maximal state itself
  const int d = 4;
  RealVector uniform = RealVector::Constant(d, 1.0 / std::sqrt(double(d)));
  const PureState psi_max = max_phase_state(d, MaxStateVariant::Regular);
  const ApplyResult ru = apply_operation(prop3_channel(uniform), psi_max.projector());
  CHECK((ru.total - psi_max.projector().matrix()).norm() < 1e-10);

  // general moduli: matrix-multiplication oracle against the phase pattern
  RealVector moduli(3);
  moduli << std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2);
  const KrausSet ch = prop3_channel(moduli);
  CHECK(ch.is_channel());
  const ComplexMatrix defect = ch.completeness_defect();
  CHECK(defect.norm() < 1e-12); // exact partition of columns

  ComplexVector phi(3);
  for (int k = 0; k < 3; ++k) phi[k] = moduli[k] * std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
  const ApplyResult rph =
      apply_operation(ch, max_phase_state(3, MaxStateVariant::Regular).projector());
  CHECK((rph.total - phi * phi.adjoint()).norm() < 1e-10);

  const OperationReport rep = classify_operation(ch);
  CHECK(rep.is_cf_prime);
  for (const OperatorClass& oc : rep.per_operator)
    CHECK((oc.tag == OperatorTag::O2Form || oc.tag == OperatorTag::O0Form));

  RealVector off(2);
  off << 1.0, 1.0;
  CHECK_THROWS_AS(prop3_channel(off), Error);
}

TEST_CASE("apply_operation outcome bookkeeping") {
  const KrausSet id = KrausSet::create(2, {ComplexMatrix::Identity(2, 2)});
  const DensityMatrix rho = random_state(2, StateKind::Mixed, 4);
  const ApplyResult ir = apply_operation(id, rho);
  REQUIRE(ir.outcomes.size() == 1);
  CHECK(ir.outcomes[0].probability == doctest::Approx(1.0));
  CHECK((ir.outcomes[0].state->matrix() - rho.matrix()).norm() < 1e-12);

  ComplexVector zero_amps(2);
  zero_amps << 1.0, 0.0;
  const ApplyResult pr = apply_operation(
      prop2_channel(PureState::validate(zero_amps)),
      validate_density(0.5 * ComplexMatrix::Identity(2, 2)));
  REQUIRE(pr.outcomes.size() == 2);
  for (const Outcome& o : pr.outcomes) {
    CHECK(o.probability == doctest::Approx(0.5));
    CHECK(std::abs(o.state->entry(0, 0) - Complex(1.0, 0.0)) < 1e-12);
  }

  const KrausSet sub = KrausSet::create(2, {0.5 * ComplexMatrix::Identity(2, 2)});
  const ApplyResult sr = apply_operation(sub, rho);
  CHECK(sr.total_probability == doctest::Approx(0.25));

  CHECK_THROWS_AS(apply_operation(id, random_state(3, StateKind::Mixed, 1)), Error);
}

TEST_CASE("sampled free operations classify as requested and preserve zero phase") {
  std::mt19937_64 rng(101);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int dim = 2 + static_cast<int>(seed % 3);
    const KrausSet cf = sample_free_operation(dim, OperationClass::CF, 1 + seed % 3, seed);
    const OperationReport cr = classify_operation(cf);
    CHECK(cr.is_cf);
    CHECK(cr.is_channel);

    const KrausSet cfp = sample_free_operation(dim, OperationClass::CFprime, 1 + seed % 3, seed);
    const OperationReport pr = classify_operation(cfp);
    CHECK(pr.is_cf_prime);
    CHECK(pr.is_channel);

    // free channels keep zero-phase states entrywise nonnegative, per operator
    const DensityMatrix sigma = random_zero_phase_state(dim, rng);
    for (const ComplexMatrix& k : cf.operators())
      CHECK(nonnegativity_violation(k * sigma.matrix() * k.adjoint()) <= 1e-8);
  }
}

TEST_CASE("all permutation channels up to dim 5 are free") {
  for (int d = 2; d <= 5; ++d)
    for (const std::vector<int>& perm : permutations(d)) {
      const OperationReport r =
          classify_operation(KrausSet::create(d, {permutation_matrix(perm)}));
      CHECK(r.is_cf);
      CHECK(r.is_channel);
    }
}

TEST_CASE("Haar-random unitaries are not free") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 3;
    const ComplexMatrix u = random_unitary(dim, rng);
    const OperationReport r = classify_operation(KrausSet::create(dim, {u}));
    REQUIRE(r.cls == OperationClass::NotFree);
    REQUIRE(r.per_operator[0].witness.has_value());
    CHECK(r.per_operator[0].witness->violation > 1e-8);
  }
}
