#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ghzq/oracle.hpp"
#include "test_support.hpp"

using namespace ghzq;
using ghzq::testing::kPi;
using cd = std::complex<double>;

TEST_SUITE("oracle") {

TEST_CASE("GHZ amplitudes") {
  const auto psi = build_ghz(GhzSpec(3, kPi / 3.0));
  REQUIRE(psi.amplitudes.size() == 8);
  CHECK(std::abs(psi.amplitudes[0] - cd{1.0 / std::sqrt(2.0), 0.0}) < 1e-15);
  CHECK(std::abs(psi.amplitudes[7] - std::polar(1.0 / std::sqrt(2.0), kPi / 3.0)) < 1e-15);
  for (std::size_t k = 1; k < 7; ++k) CHECK(psi.amplitudes[k] == cd{});
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_ghz(GhzSpec(kOracleMaxQubits + 1, 0.0)), std::invalid_argument);
}

TEST_CASE("two-qubit correlators") {
  const auto plus = build_ghz(GhzSpec(2, 0.0));
  const auto minus = build_ghz(GhzSpec(2, kPi));
  using enum PauliAxis;
  const std::vector<PauliAxis> xx{X, X}, yy{Y, Y}, zi{Z, I}, zz{Z, Z}, xy{X, Y};
  CHECK(oracle_pauli_correlator(plus, xx) == doctest::Approx(1.0));
  CHECK(oracle_pauli_correlator(plus, yy) == doctest::Approx(-1.0));
  CHECK(oracle_pauli_correlator(minus, xx) == doctest::Approx(-1.0));
  CHECK(oracle_pauli_correlator(minus, yy) == doctest::Approx(1.0));
  CHECK(oracle_pauli_correlator(minus, zi) == doctest::Approx(0.0));
  CHECK(oracle_pauli_correlator(minus, zz) == doctest::Approx(1.0));
  CHECK(oracle_pauli_correlator(minus, xy) == doctest::Approx(0.0));
  // -<sx sx> + <sy sy> reaches 2 at phi = pi.
  CHECK(-oracle_pauli_correlator(minus, xx) + oracle_pauli_correlator(minus, yy) ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(oracle_pauli_correlator(minus, std::vector<PauliAxis>{X}),
                  std::invalid_argument);
}

TEST_CASE("Bell values for both families") {
  for (int m = 1; m <= kOracleMaxQubits; ++m) {
    const auto setup = convention_for(m, ConventionFamily::Auto);
    const auto exact = oracle_bell_value(setup.state, setup.convention);
    const double scale = std::ldexp(1.0, m - 1);
    CHECK(exact.f == doctest::Approx(scale).epsilon(1e-12));
    if (m % 2 == 1) {
      CHECK(std::abs(exact.expectation - cd{0.0, -scale}) < 1e-12 * scale);
    } else {
      CHECK(std::abs(exact.expectation + std::polar(scale, kPi / 4.0)) < 1e-12 * scale);
    }
  }
}

TEST_CASE("spin-up total is m/2") {
  for (int m = 1; m <= 8; ++m)
    CHECK(oracle_spin_up_total(build_ghz(GhzSpec(m, 0.7))) == doctest::Approx(0.5 * m));
}

TEST_CASE("coherent overlap at the poles") {
  const GhzSpec spec(3, 0.4);
  const PhasePoint north(3, BlochSample{0.0, 0.0, 1.0});
  const PhasePoint south(3, BlochSample{0.0, 0.0, -1.0});
  CHECK(std::abs(coherent_overlap(spec, north) - cd{1.0 / std::sqrt(2.0), 0.0}) < 1e-14);
  CHECK(std::abs(std::abs(coherent_overlap(spec, south)) - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("Q-weighted moments reproduce the operator expectation") {
  for (int m = 1; m <= 3; ++m) {
    const auto setup = convention_for(m, ConventionFamily::Auto);
    const cd exact = oracle_bell_value(setup.state, setup.convention).expectation;
    const cd q = oracle_q_moment_check(setup.state, setup.convention, m == 3 ? 12 : 24);
    CHECK(std::abs(q - exact) < 1e-9 * std::max(1.0, std::abs(exact)));
  }
  CHECK_THROWS_AS(oracle_q_moment_check(GhzSpec(4, 0.0), mermin_convention(3).convention, 8),
                  std::invalid_argument);
}

}  // TEST_SUITE
