#include "doctest.h"

#include <cmath>
#include <set>

#include "ghzq/rng.hpp"

using namespace ghzq;

TEST_SUITE("rng") {

TEST_CASE("streams are reproducible and keyed by seed, index and tag") {
  CounterRng a(7, 42);
  CounterRng b(7, 42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());

  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 8; ++seed)
    for (std::uint64_t idx = 0; idx < 64; ++idx)
      for (auto tag : {StreamTag::Sampler, StreamTag::Noise, StreamTag::Thinning})
        firsts.insert(CounterRng(seed, idx, tag)());
  CHECK(firsts.size() == 8 * 64 * 3);
}

TEST_CASE("uniform draws are in [0, 1) with the right moments") {
  CounterRng rng(3, 0);
  double sum = 0.0;
  double sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("counter_hash is the first draw of the keyed stream") {
  CounterRng rng(11, 5, StreamTag::Thinning);
  CHECK(counter_hash(11, 5, StreamTag::Thinning) == rng());
}

}  // TEST_SUITE
