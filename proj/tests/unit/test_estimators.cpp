#include "doctest.h"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "ghzq/estimators.hpp"
#include "ghzq/oracle.hpp"
#include "ghzq/sampler.hpp"
#include "test_support.hpp"

using namespace ghzq;
using ghzq::testing::kPi;
using cd = std::complex<double>;

TEST_SUITE("estimators") {

TEST_CASE("bell weight examples") {
  const BellConvention single({1}, {0.0}, Extraction::NegImag, ConventionLabel::Mermin);
  const PhasePoint plus_x{{1.0, 0.0, 0.0}};
  CHECK(std::abs(bell_weight(single, plus_x) - cd{3.0, 0.0}) < 1e-14);

  const auto ard = ardehali_convention(2).convention;
  const PhasePoint both_x{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  CHECK(std::abs(bell_weight(ard, both_x) - std::polar(9.0, kPi / 4.0)) < 1e-13);

  const PhasePoint plus_y{{0.0, 1.0, 0.0}};
  const BellConvention lowered({-1}, {0.0}, Extraction::NegReal);
  CHECK(std::abs(bell_weight(lowered, plus_y) - cd{0.0, -3.0}) < 1e-14);

  CHECK_THROWS_AS(bell_weight(ard, plus_x), std::invalid_argument);
}

TEST_CASE("BellWeigher agrees with bell_weight") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 1 + trial % 9;
    std::vector<int> s(m);
    std::vector<double> t(m);
    for (int j = 0; j < m; ++j) {
      s[j] = (gen() & 1) ? 1 : -1;
      t[j] = angle(gen);
    }
    const BellConvention conv(s, t, Extraction::NegReal);
    const auto p = ghzq::testing::random_point(gen, m);
    const cd a = bell_weight(conv, p);
    const cd b = BellWeigher(conv)(p);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("Mermin m=3 mean weight is -4i") {
  const auto setup = mermin_convention(3);
  const auto run = simulate_bell(setup, {1000000, 11, 0});
  const auto& acc = run.weights;
  const double se_re = acc.standard_error_along({1.0, 0.0});
  const double se_im = acc.standard_error_along({0.0, 1.0});
  CHECK(std::abs(acc.mean().real() - 0.0) < 3.0 * se_re);
  CHECK(std::abs(acc.mean().imag() + 4.0) < 3.0 * se_im);
  CHECK(std::abs(run.bell.f_value - 4.0) < 3.0 * run.bell.f_stderr);
  CHECK(run.bell.f_qm == 4.0);
  CHECK(run.bell.ratio * run.bell.f_qm == doctest::Approx(run.bell.f_value).epsilon(1e-12));
}

TEST_CASE("Ardehali m=2 ratio is one") {
  const auto setup = ardehali_convention(2);
  const auto run = simulate_bell(setup, {1000000, 12, 0});
  CHECK(run.bell.f_qm == 2.0);
  CHECK(std::abs(run.bell.ratio - 1.0) < 3.0 * run.bell.ratio_stderr);
}

TEST_CASE("sampled moments are unbiased against the oracle (m <= 8)") {
  for (int m = 1; m <= 8; ++m) {
    for (auto family : {ConventionFamily::Mermin, ConventionFamily::Ardehali}) {
      if ((family == ConventionFamily::Mermin) != (m % 2 == 1)) continue;
      const auto setup = convention_for(m, family);
      const cd exact = oracle_bell_value(setup.state, setup.convention).expectation;
      const auto run = simulate_bell(setup, {200000, 100u + m, 0});
      const auto& acc = run.weights;
      CHECK(std::abs(acc.mean().real() - exact.real()) <
            4.0 * acc.standard_error_along({1.0, 0.0}));
      CHECK(std::abs(acc.mean().imag() - exact.imag()) <
            4.0 * acc.standard_error_along({0.0, 1.0}));
    }
  }
}

TEST_CASE("second moment of the weight grows as 6^m") {
  std::vector<double> second;
  for (int m = 3; m <= 9; ++m) {
    const auto setup = convention_for(m, ConventionFamily::Auto);
    const auto batch = sample_batch(setup.state, {21, 0, 200000});
    double s = 0.0;
    for (const auto& p : batch.points) s += std::norm(bell_weight(setup.convention, p));
    second.push_back(s / batch.points.size());
  }
  for (std::size_t k = 0; k + 1 < second.size(); ++k) {
    const double r = second[k + 1] / second[k];
    CHECK(r > 5.0);
    CHECK(r < 7.0);
  }
}

TEST_CASE("estimates do not depend on worker count or merge layout") {
  const auto setup = mermin_convention(5);
  const auto one = simulate_bell(setup, {100000, 4, 1});
  const auto four = simulate_bell(setup, {100000, 4, 4});
  CHECK(one.bell.complex_mean == four.bell.complex_mean);
  CHECK(one.bell.f_stderr == four.bell.f_stderr);
  CHECK(one.proposals == four.proposals);

  // Whole-run accumulation vs merged sequential partials.
  const auto batch = sample_batch(setup.state, {4, 0, 100000});
  MomentAccumulator whole;
  std::vector<MomentAccumulator> parts(7);
  for (std::size_t k = 0; k < batch.points.size(); ++k) {
    const cd w = bell_weight(setup.convention, batch.points[k]);
    whole.add(w);
    parts[k % 7].add(w);
  }
  MomentAccumulator merged;
  for (const auto& p : parts) merged.merge(p);
  const auto a = make_bell_estimate(setup.state, setup.convention, whole);
  const auto b = make_bell_estimate(setup.state, setup.convention, merged);
  CHECK(a.f_value == doctest::Approx(b.f_value).epsilon(1e-12));
  CHECK(a.f_stderr == doctest::Approx(b.f_stderr).epsilon(1e-12));
  CHECK(a.f_value == doctest::Approx(one.bell.f_value).epsilon(1e-12));
}

TEST_CASE("ratio is invariant under a joint qubit permutation") {
  const auto setup = ardehali_convention(4);
  const auto batch = sample_batch(setup.state, {8, 0, 50000});
  const std::vector<std::size_t> order{3, 1, 0, 2};
  const auto conv_p = setup.convention.permuted(order);
  std::vector<PhasePoint> permuted;
  for (const auto& p : batch.points) {
    PhasePoint q(p.size());
    for (std::size_t k = 0; k < order.size(); ++k) q[k] = p[order[k]];
    permuted.push_back(q);
  }
  const auto a = estimate_bell(setup.state, setup.convention, batch.points);
  const auto b = estimate_bell(setup.state, conv_p, permuted);
  CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(1e-12));
  CHECK(a.ratio_stderr == doctest::Approx(b.ratio_stderr).epsilon(1e-10));
}

TEST_CASE("custom conventions normalize with the oracle") {
  const GhzSpec spec(3, -kPi / 2.0);
  const BellConvention conv({1, 1, 1}, {0.0, 0.0, 0.0}, Extraction::NegImag);
  const auto batch = sample_batch(spec, {2, 0, 1000});
  const auto e = estimate_bell(spec, conv, batch.points);
  CHECK(e.f_qm == doctest::Approx(4.0));
  CHECK_THROWS_AS(estimate_bell(spec, conv, std::span<const PhasePoint>{}), std::invalid_argument);
}

TEST_CASE("spin-up total") {
  const PhasePoint north(4, BlochSample{0.0, 0.0, 1.0});
  CHECK(spin_up_value(north) == 8.0);

  for (int m : {2, 5, 9}) {
    const GhzSpec spec(m, 0.3);
    const auto batch = sample_batch(spec, {40, 0, 100000});
    const auto n = spin_up_total(spec, batch.points);
    CHECK(std::abs(n.mean - 0.5 * m) < 3.0 * n.std_error);
  }

  const auto small = simulate_bell(ardehali_convention(4), {1000000, 6, 0});
  const auto large = simulate_bell(ardehali_convention(20), {1000000, 6, 0});
  CHECK(large.spin_up.std_error / 10.0 < small.spin_up.std_error / 2.0);

  CHECK_THROWS_AS(spin_up_total(GhzSpec(2, 0.0), std::span<const PhasePoint>{}),
                  std::invalid_argument);
}

TEST_CASE("scatter data") {
  const auto setup = ardehali_convention(2);
  const PhasePoint poles{{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}};
  const auto row = scatter_row(poles, 0, 1, 0);
  CHECK(row.factor_a == 0.0);
  CHECK(row.factor_b == 0.0);

  const auto batch = sample_batch(setup.state, {9, 0, 10000});
  const auto rows = scatter_data(setup.convention, batch.points, 0, 1, 20000);
  REQUIRE(rows.size() == 10000);
  double max_a = 0.0;
  VectorMoments<2> terms;
  for (const auto& r : rows) {
    max_a = std::max(max_a, std::abs(r.factor_a));
    terms.add({r.term_xx, r.term_yy});
  }
  CHECK(max_a > 1.5);
  CHECK(terms.covariance(0, 1) < 0.0);

  const auto thinned = scatter_data(setup.convention, batch.points, 0, 1, 100, 5);
  CHECK(thinned.size() == 100);
  CHECK(std::is_sorted(thinned.begin(), thinned.end(),
                       [](const auto& x, const auto& y) { return x.index < y.index; }));

  CHECK_THROWS_AS(scatter_data(setup.convention, batch.points, 0, 2, 10), std::out_of_range);
}

TEST_CASE("streamed scatter thinning is worker independent") {
  const auto setup = ardehali_convention(2);
  const auto a = simulate_scatter(setup, {50000, 3, 1}, 0, 1, 500);
  const auto b = simulate_scatter(setup, {50000, 3, 3}, 0, 1, 500);
  REQUIRE(a.rows.size() == 500);
  REQUIRE(b.rows.size() == 500);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].index == b.rows[k].index);
    CHECK(a.rows[k].term_xx == b.rows[k].term_xx);
  }
  CHECK(a.moments.count() == 50000);
  CHECK(a.moments.covariance(2, 3) == b.moments.covariance(2, 3));
  // Means of the two terms are <-sx sx> = 1 and <sy sy> = 1.
  CHECK(std::abs(a.moments.mean(2) - 1.0) < 4.0 * std::sqrt(a.moments.covariance(2, 2) / 50000));
  CHECK(std::abs(a.moments.mean(3) - 1.0) < 4.0 * std::sqrt(a.moments.covariance(3, 3) / 50000));
}

TEST_CASE("line fit") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{3, 5, 7, 9};
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.slope_stderr == doctest::Approx(0.0));
  const std::vector<double> one{1};
  CHECK_THROWS_AS(fit_line(one, one), std::invalid_argument);
}

TEST_CASE("small scaling study") {
  const std::vector<int> ms{4, 5, 6, 7, 8, 9, 10, 11, 12};
  const auto study = scaling_study(ms, ConventionFamily::Auto, 100000, 1);
  REQUIRE(study.rows.size() == ms.size());
  for (const auto& r : study.rows) {
    CHECK(r.rel_err_f > 0.0);
    CHECK(r.rel_err_n > 0.0);
    CHECK(r.rel_err_n_uncertainty > 0.0);
  }
  // Variance argument: slope log2(sqrt(6)/2) ~ 0.29.
  CHECK(study.log2_rel_err_f_fit.slope > 0.2);
  CHECK(study.log2_rel_err_f_fit.slope < 0.45);
}

}  // TEST_SUITE
