#pragma once

// Collective dephasing from delta-correlated field noise
//   H = dE(t)/2 sum_j sigma_z^j,  <dE(t) dE(t')> = dE0^2 delta(t - t').
// In the Heisenberg picture the M-th order coherence picks up a random phase
// each step, so each sample's Bell weight is multiplied by exp(i eps M zeta_t)
// with independent standard Gaussians zeta_t. The ensemble average decays as
// exp(-eps^2 M^2 tau / 2).

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ghzq/estimators.hpp"
#include "ghzq/model.hpp"
#include "ghzq/rng.hpp"

namespace ghzq {

struct NoiseSpec {
  double epsilon = 0.0;  // dE0 sqrt(dt) / hbar
  int steps = 0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for negative or non-finite values.
  void validate() const;
};

/// Gaussian sequence zeta_1, zeta_2, ... for one sample index.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t sample_index) noexcept
      : rng_(seed, sample_index, StreamTag::Noise) {}

  double next() { return normal_(rng_); }

 private:
  CounterRng rng_;
  std::normal_distribution<double> normal_;
};

/// weight * prod_{t=1..steps} exp(i eps m zeta_t).
std::complex<double> apply_dephasing(std::complex<double> weight, int m,
                                     const NoiseSpec& noise, std::uint64_t sample_index);

/// exp(-eps^2 m^2 tau / 2)
double analytic_decay(double epsilon, int m, int tau) noexcept;

struct DecayPoint {
  int tau = 0;
  double f_value = 0.0;
  double f_ratio = 0.0;   // F(tau) / F(0)
  double stderr_ratio = 0.0;
  double analytic_ratio = 0.0;
};

struct DecayCurve {
  int m = 0;
  std::uint64_t samples = 0;
  std::vector<DecayPoint> points;  // tau = 0..steps
};

/// F(tau) / F(0) for tau = 0..noise.steps from the same samples. F is read
/// along the axis of the noiseless mean at every tau. Sampling and noise both
/// derive from noise.seed. Throws std::invalid_argument for zero samples.
DecayCurve decay_curve(const BellSetup& setup, const NoiseSpec& noise,
                       std::uint64_t samples_per_point, unsigned workers = 0);

/// Least-squares rate k in F ratio = exp(-k tau), weighted by (ratio/stderr)^2
/// over points with ratio > 3 stderr. NaN when no point qualifies.
double fit_decay_rate(const DecayCurve& curve);

/// Slope of ln(rate) against ln(m) over the given curves.
LinearFit fit_rate_exponent(std::span<const DecayCurve> curves);

}  // namespace ghzq
