#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ghzq/oracle.hpp"
#include "ghzq/qfunction.hpp"
#include "test_support.hpp"

using namespace ghzq;
using ghzq::testing::kPi;
using ghzq::testing::random_point;

TEST_SUITE("qfunction") {

TEST_CASE("pointwise examples") {
  const PhasePoint plus_x{{1.0, 0.0, 0.0}};
  CHECK(q_density(GhzSpec(1, 0.0), plus_x) == doctest::Approx(1.0 / (2.0 * kPi)));

  const PhasePoint up_down{{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}};
  CHECK(q_density(GhzSpec(2, 0.0), up_down) == doctest::Approx(0.0));

  const PhasePoint equator{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  CHECK(std::abs(q_density(GhzSpec(2, kPi), equator)) < 1e-15);
  // Constructive case for comparison: (1/4 + 1/4 + 2/4) / 2 = 1/2.
  CHECK(q_density(GhzSpec(2, 0.0), equator) == doctest::Approx(0.5 * q_kernel(2)));
}

TEST_CASE("parts of the density") {
  const PhasePoint p{BlochSample::from_angles(0.4, 1.1), BlochSample::from_angles(2.0, -0.3)};
  const auto parts = q_density_parts(p);
  CHECK(parts.up_product == doctest::Approx(std::pow(std::cos(0.2), 2) * std::pow(std::cos(1.0), 2)));
  CHECK(parts.down_product == doctest::Approx(std::pow(std::sin(0.2), 2) * std::pow(std::sin(1.0), 2)));
  CHECK(parts.cross_product ==
        doctest::Approx(std::cos(0.2) * std::sin(0.2) * std::cos(1.0) * std::sin(1.0)));
  CHECK(parts.phase_sum == doctest::Approx(0.8));
  CHECK(parts.cross_product * parts.cross_product <=
        parts.up_product * parts.down_product * (1.0 + 1e-12));
  const GhzSpec spec(2, 0.9);
  const double expected = 0.5 * q_kernel(2) *
                          (parts.up_product + parts.down_product +
                           2.0 * parts.cross_product * std::cos(0.9 - parts.phase_sum));
  CHECK(q_density(spec, p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("density equals the dense coherent-state overlap") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = 1 + trial % 4;
    const GhzSpec spec(m, phase(gen));
    const auto p = random_point(gen, m);
    const double a = q_density(spec, p);
    const double b = oracle_q_density(spec, p);
    worst = std::max(worst, std::abs(a - b));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("nonnegativity and envelope domination") {
  std::mt19937_64 gen(5);
  const double phis[] = {0.0, kPi, -kPi / 2.0, 1.234};
  for (int m = 1; m <= 6; ++m) {
    double min_q = 1.0;
    double max_excess = -1.0;
    for (int i = 0; i < 1000000 / 4; ++i) {
      for (double phi : phis) {
        const GhzSpec spec(m, phi);
        const auto p = random_point(gen, m);
        const double q = q_density(spec, p);
        min_q = std::min(min_q, q);
        max_excess = std::max(max_excess, q - envelope_density(spec, p));
      }
    }
    CHECK(min_q >= 0.0);
    CHECK(max_excess <= 1e-15);
  }
}

TEST_CASE("acceptance probability is density over envelope") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20000; ++trial) {
    const int m = 1 + trial % 8;
    const GhzSpec spec(m, 0.37 * trial);
    const auto p = random_point(gen, m);
    const double expected = q_density(spec, p) / envelope_density(spec, p);
    CHECK(acceptance_probability(spec, p) == doctest::Approx(expected).epsilon(1e-9));
  }
  // Poles: one branch vanishes, interference vanishes.
  const PhasePoint poles{{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}};
  CHECK(acceptance_probability(GhzSpec(2, 0.0), poles) == 0.0);
  const PhasePoint north{{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}};
  CHECK(acceptance_probability(GhzSpec(2, 0.0), north) == doctest::Approx(0.5));
}

TEST_CASE("permutation symmetry") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + trial % 5;
    const GhzSpec spec(m, 0.5);
    auto p = random_point(gen, m);
    const double q = q_density(spec, p);
    std::shuffle(p.begin(), p.end(), gen);
    CHECK(q_density(spec, p) == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("quadrature normalization") {
  CHECK(q_density_quadrature_check(GhzSpec(1, 0.0), 64) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(q_density_quadrature_check(GhzSpec(2, kPi), 48) == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(q_density_quadrature_check(GhzSpec(3, -kPi / 2.0), 16) ==
        doctest::Approx(1.0).epsilon(1e-2));
  CHECK(make_sphere_rule(8).nodes.size() == 64);
  double total = 0.0;
  for (double w : make_sphere_rule(12).weights) total += w;
  CHECK(total == doctest::Approx(4.0 * kPi));
}

TEST_CASE("single-qubit marginal gives <sigma_x> = 3 E[nx]") {
  const GhzSpec spec(1, 0.0);
  const auto rule = make_sphere_rule(32);
  const double mean_nx = integrate_product_spheres(1, rule, [&](std::span<const BlochSample> p) {
    return p[0].nx * q_density(spec, p);
  });
  CHECK(3.0 * mean_nx == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("error paths") {
  const PhasePoint one{{0.0, 0.0, 1.0}};
  CHECK_THROWS_AS(q_density(GhzSpec(2, 0.0), one), std::invalid_argument);
  CHECK_THROWS_AS(envelope_density(GhzSpec(2, 0.0), one), std::invalid_argument);
  CHECK_THROWS_AS(q_density_quadrature_check(GhzSpec(1, 0.0), 7), std::invalid_argument);
  CHECK_THROWS_AS(q_density_quadrature_check(GhzSpec(4, 0.0), 8), std::invalid_argument);
}

}  // TEST_SUITE
