#pragma once

// Exact i.i.d. sampling of the GHZ Q density.
//
// Proposal: with probability 1/2 every qubit independently has cos(theta)
// with density (1+u)/2 ("up" branch), otherwise (1-u)/2 ("down"); azimuths
// are uniform. This is envelope_density / 2, so accepting with probability
// q_density / envelope_density yields exact draws at an overall acceptance
// rate of 1/2 for every m and phi.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ghzq/model.hpp"
#include "ghzq/rng.hpp"

namespace ghzq {

/// Global index range of a sampling run. The point at index k depends only
/// on (seed, k).
struct SampleStreamSpec {
  std::uint64_t seed = 0;
  std::uint64_t first_index = 0;
  std::uint64_t count = 0;
};

enum class Branch { Up, Down };

/// Signals a rejection loop that ran into the iteration cap.
class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMaxProposalsPerSample = 1'000'000;

/// Inverse CDF of the branch density for cos(theta): 2 sqrt(r) - 1 on the up
/// branch, 1 - 2 sqrt(r) on the down branch.
double branch_cos_theta(Branch branch, double r) noexcept;

/// One draw from the envelope mixture, written into `out` (size m).
void propose_point(const GhzSpec& spec, CounterRng& rng, std::span<BlochSample> out);

/// Rejection-samples the point with global index `index` into `out`.
/// Returns the number of proposals used. Throws SamplerError past
/// kMaxProposalsPerSample.
std::uint64_t draw_point(const GhzSpec& spec, std::uint64_t seed, std::uint64_t index,
                         std::span<BlochSample> out);

/// Reusable per-worker sampler: keeps scratch buffers between draws.
class PointSampler {
 public:
  explicit PointSampler(const GhzSpec& spec);

  /// Same contract and same output as draw_point.
  std::uint64_t draw(std::uint64_t seed, std::uint64_t index, std::span<BlochSample> out);

  const GhzSpec& spec() const noexcept { return spec_; }

 private:
  GhzSpec spec_;
  std::vector<double> cos_theta_;
  std::vector<double> azimuth_;
};

struct SampleBatch {
  std::vector<PhasePoint> points;
  std::uint64_t proposals = 0;

  double acceptance_rate() const noexcept {
    return proposals == 0 ? 0.0 : static_cast<double>(points.size()) / proposals;
  }
};

/// Draws every index in the stream, in order.
SampleBatch sample_batch(const GhzSpec& spec, const SampleStreamSpec& stream);

}  // namespace ghzq
