#include "ghzq/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ghzq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Rescale the branch products together before either underflows; only their
// ratio enters the acceptance test.
constexpr double kRescaleBelow = 0x1.0p-500;
constexpr int kRescaleExp = 500;

}  // namespace

double branch_cos_theta(Branch branch, double r) noexcept {
  const double s = 2.0 * std::sqrt(r);
  return branch == Branch::Up ? s - 1.0 : 1.0 - s;
}

void propose_point(const GhzSpec& spec, CounterRng& rng, std::span<BlochSample> out) {
  const Branch branch = rng.uniform() < 0.5 ? Branch::Up : Branch::Down;
  for (int j = 0; j < spec.qubits(); ++j) {
    const double u = branch_cos_theta(branch, rng.uniform());
    const double a = kTwoPi * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    out[j] = {s * std::cos(a), s * std::sin(a), u};
  }
}

PointSampler::PointSampler(const GhzSpec& spec)
    : spec_(spec), cos_theta_(spec.qubits()), azimuth_(spec.qubits()) {}

std::uint64_t PointSampler::draw(std::uint64_t seed, std::uint64_t index,
                                 std::span<BlochSample> out) {
  const int m = spec_.qubits();
  CounterRng rng(seed, index, StreamTag::Sampler);
  for (std::uint64_t attempt = 1; attempt <= kMaxProposalsPerSample; ++attempt) {
    // Same draws, in the same order, as propose_point; trig is deferred until
    // the proposal is accepted.
    const Branch branch = rng.uniform() < 0.5 ? Branch::Up : Branch::Down;
    double up = 1.0;
    double down = 1.0;
    double phase_sum = 0.0;
    for (int j = 0; j < m; ++j) {
      const double u = branch_cos_theta(branch, rng.uniform());
      const double a = kTwoPi * rng.uniform();
      cos_theta_[j] = u;
      azimuth_[j] = a;
      up *= 0.5 * (1.0 + u);
      down *= 0.5 * (1.0 - u);
      phase_sum += a;
      if (up < kRescaleBelow && down < kRescaleBelow) {
        up = std::ldexp(up, kRescaleExp);
        down = std::ldexp(down, kRescaleExp);
      }
    }
    const double sum = up + down;
    const double overlap = sum > 0.0 ? 2.0 * std::sqrt(up * down) / sum : 0.0;
    const double accept =
        0.5 * (1.0 + overlap * std::cos(spec_.phase() - phase_sum));
    if (rng.uniform() < accept) {
      for (int j = 0; j < m; ++j) {
        const double u = cos_theta_[j];
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        out[j] = {s * std::cos(azimuth_[j]), s * std::sin(azimuth_[j]), u};
      }
      return attempt;
    }
  }
  throw SamplerError("rejection loop exceeded " +
                     std::to_string(kMaxProposalsPerSample) +
                     " proposals at sample index " + std::to_string(index));
}

std::uint64_t draw_point(const GhzSpec& spec, std::uint64_t seed, std::uint64_t index,
                         std::span<BlochSample> out) {
  PointSampler sampler(spec);
  return sampler.draw(seed, index, out);
}

SampleBatch sample_batch(const GhzSpec& spec, const SampleStreamSpec& stream) {
  SampleBatch batch;
  batch.points.reserve(stream.count);
  PointSampler sampler(spec);
  PhasePoint point(spec.qubits());
  for (std::uint64_t k = 0; k < stream.count; ++k) {
    batch.proposals += sampler.draw(stream.seed, stream.first_index + k, point);
    batch.points.push_back(point);
  }
  return batch;
}

}  // namespace ghzq
