// Copyright (c) 2026 The phaselab authors
// SPDX-License-Identifier: Apache-2.0

#include "phaselab/states.hpp"

#include <doctest.h>
#include <numbers>
#include <random>

#include "phaselab/errors.hpp"
#include "phaselab/linalg.hpp"
#include "test_helpers.hpp"

using namespace phaselab;
using phaselab::testing::matrix2;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("validate_density accepts and rejects") {
  CHECK_NOTHROW(validate_density(0.5 * ComplexMatrix::Identity(2, 2)));

  ComplexMatrix bad_trace = ComplexMatrix::Zero(2, 2);
  bad_trace(0, 0) = 1.0;
  bad_trace(1, 1) = 0.1;
  CHECK(code_of([&] { validate_density(bad_trace); }) == ErrorCode::BadTrace);

  // eigenvalues (1.5, -0.5) by the 2x2 trace/determinant oracle
  const ComplexMatrix not_psd = matrix2(0.5, 1.0, 1.0, 0.5);
  CHECK(code_of([&] { validate_density(not_psd); }) == ErrorCode::NotPsd);

  const ComplexMatrix not_herm = matrix2(0.5, 0.2, 0.3, 0.5);
  CHECK(code_of([&] { validate_density(not_herm); }) == ErrorCode::NotHermitian);
}

TEST_CASE("is_zero_phase") {
  CHECK(is_zero_phase(validate_density(ComplexMatrix::Identity(3, 3) / 3.0)));
  const DensityMatrix y =
      validate_density(matrix2(0.5, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.5));
  CHECK_FALSE(is_zero_phase(y));
  CHECK(is_zero_phase(validate_density(matrix2(0.5, 0.5, 0.5, 0.5))));
}

TEST_CASE("bloch map fixed points and roundtrip") {
  const DensityMatrix north = bloch_to_rho({0.0, 0.0, 1.0});
  CHECK(std::abs(north.entry(0, 0) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(north.entry(1, 1)) < 1e-15);

  const DensityMatrix ypos = bloch_to_rho({0.0, 1.0, 0.0});
  CHECK(std::abs(ypos.entry(0, 1) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(ypos.entry(1, 0) - Complex(0.0, 0.5)) < 1e-15);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    BlochVector b{unit(rng), unit(rng), unit(rng)};
    const double r = std::sqrt(b.x * b.x + b.y * b.y + b.z * b.z);
    if (r > 1.0) {
      b.x /= r;
      b.y /= r;
      b.z /= r;
    }
    const BlochVector back = rho_to_bloch(bloch_to_rho(b));
    CHECK(std::abs(back.x - b.x) < 1e-12);
    CHECK(std::abs(back.y - b.y) < 1e-12);
    CHECK(std::abs(back.z - b.z) < 1e-12);
  }

  CHECK(code_of([] { bloch_to_rho({1.0, 1.0, 0.0}); }) == ErrorCode::BlochOutOfBall);
  CHECK(code_of([] {
          rho_to_bloch(validate_density(ComplexMatrix::Identity(3, 3) / 3.0));
        }) == ErrorCode::BadDimension);
}

TEST_CASE("coherent phase state truncation") {
  const CoherentPhaseState vac = coherent_phase_state(Complex(0.0, 0.0), 5);
  CHECK(std::abs(vac.state.amplitudes()[0] - Complex(1.0, 0.0)) < 1e-15);
  CHECK(vac.truncation_weight == doctest::Approx(0.0));

  const CoherentPhaseState half = coherent_phase_state(Complex(0.5, 0.0), 20);
  CHECK(half.truncation_weight < 1e-12);
  CHECK(half.truncation_weight == doctest::Approx(std::pow(0.5, 40)).epsilon(1e-6));
  // amplitudes proportional to (1, 0.5, 0.25, ...)
  const ComplexVector& amps = half.state.amplitudes();
  CHECK(std::abs(amps[1] / amps[0] - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(amps[2] / amps[0] - Complex(0.25, 0.0)) < 1e-12);

  // geometric-sum oracle for the kept mass at a shorter cutoff
  const CoherentPhaseState st = coherent_phase_state(Complex(0.0, 0.5), 4);
  double kept = 0.0;
  for (int j = 0; j < 4; ++j) kept += (1.0 - 0.25) * std::pow(0.25, j);
  CHECK(st.truncation_weight == doctest::Approx(1.0 - kept).epsilon(1e-12));

  CHECK(code_of([] { coherent_phase_state(Complex(0.999999999, 0.0), 4); }) ==
        ErrorCode::EpsilonTooLarge);
}

TEST_CASE("max phase state regular") {
  const PureState two = max_phase_state(2, MaxStateVariant::Regular);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(two.amplitudes()[0] - Complex(inv_sqrt2, 0.0)) < 1e-12);
  CHECK(std::abs(two.amplitudes()[1] - Complex(-inv_sqrt2, 0.0)) < 1e-12);

  const PureState three = max_phase_state(3, MaxStateVariant::Regular);
  for (int j = 0; j < 3; ++j) {
    CHECK(three.modulus(j) == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(wrap_angle(three.phase_angle(j)) ==
          doctest::Approx(wrap_angle(2.0 * std::numbers::pi * j / 3.0)).epsilon(1e-12));
  }

  CHECK(code_of([] { max_phase_state(1, MaxStateVariant::Regular); }) == ErrorCode::BadDimension);
}

TEST_CASE("max phase state closure property") {
  for (int dim = 2; dim <= 8; ++dim)
    for (std::uint64_t seed = 0; seed < 25; ++seed)
      for (const MaxStateVariant variant : {MaxStateVariant::Regular, MaxStateVariant::Random}) {
        const PureState psi = max_phase_state(dim, variant, seed);
        Complex sum(0.0, 0.0);
        for (int j = 0; j < dim; ++j) {
          sum += psi.amplitudes()[j];
          CHECK(psi.modulus(j) == doctest::Approx(1.0 / std::sqrt(double(dim))).epsilon(1e-12));
        }
        CHECK(std::abs(sum) < 1e-12);
      }
}

TEST_CASE("polygon vertices") {
  const std::vector<Complex> tri = polygon_vertices(max_phase_state(3, MaxStateVariant::Regular));
  REQUIRE(tri.size() == 4);
  const double side = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(tri[j + 1] - tri[j]) == doctest::Approx(side).epsilon(1e-12));
  CHECK(std::abs(tri[3] - tri[0]) < 1e-9); // closes

  const std::vector<Complex> segment =
      polygon_vertices(max_phase_state(2, MaxStateVariant::Regular));
  REQUIRE(segment.size() == 3);
  CHECK(std::abs(segment[1].imag()) < 1e-12); // out along the real axis
  CHECK(std::abs(segment[2]) < 1e-9);         // and back

  const std::vector<Complex> poly =
      polygon_vertices(max_phase_state(5, MaxStateVariant::Random, 42));
  CHECK(std::abs(poly.back()) < 1e-9);

  CHECK(code_of([] {
          ComplexVector v(2);
          v << Complex(0.9486832980505138, 0.0), Complex(0.31622776601683794, 0.0);
          polygon_vertices(PureState::validate(v));
        }) == ErrorCode::NotEquimodular);
}

TEST_CASE("random state samplers") {
  const DensityMatrix pure = random_state(3, StateKind::Pure, 1);
  const TopSvd svd = svd_top(pure.matrix());
  CHECK(svd.singular_values[1] / svd.singular_values[0] < 1e-10);

  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    CHECK_NOTHROW(validate_density(random_state(4, StateKind::Mixed, seed).matrix()));

  const DensityMatrix a = random_state(4, StateKind::Mixed, 123);
  const DensityMatrix b = random_state(4, StateKind::Mixed, 123);
  CHECK((a.matrix() - b.matrix()).norm() == 0.0);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const DensityMatrix z = random_zero_phase_state(3, seed);
    CHECK(is_zero_phase(z));
    CHECK_NOTHROW(validate_density(z.matrix()));
  }
}

TEST_CASE("weighted direct sum") {
  const DensityMatrix a = random_state(2, StateKind::Mixed, 9);
  const DensityMatrix b = random_state(3, StateKind::Mixed, 10);
  const DensityMatrix block = weighted_direct_sum(0.3, a, 0.7, b);
  CHECK(block.dim() == 5);
  CHECK_NOTHROW(validate_density(block.matrix()));
  CHECK(std::abs(block.entry(0, 0) - 0.3 * a.entry(0, 0)) < 1e-15);
  CHECK(std::abs(block.entry(3, 3) - 0.7 * b.entry(1, 1)) < 1e-15);
  CHECK(std::abs(block.entry(0, 3)) == 0.0);
}

TEST_CASE("phase profile canonical form") {
  RealVector t(3);
  t << 1.0, 1.5 + 2.0 * std::numbers::pi, 0.5;
  const PhaseProfile profile = PhaseProfile::canonical(t);
  CHECK(profile.thetas()[0] == 0.0);
  CHECK(profile.thetas()[1] == doctest::Approx(0.5));
  CHECK(profile.thetas()[2] == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  for (int j = 0; j < 3; ++j) {
    CHECK(profile.thetas()[j] >= 0.0);
    CHECK(profile.thetas()[j] < 2.0 * std::numbers::pi);
  }
}

TEST_CASE("pure state validation") {
  ComplexVector v(2);
  v << Complex(1.0, 0.0), Complex(1.0, 0.0);
  CHECK_THROWS_AS(PureState::validate(v), Error);
  const PureState n = PureState::normalized(v);
  CHECK(n.amplitudes().norm() == doctest::Approx(1.0));
}
