#pragma once

// Mergeable streaming moments (Welford update, Chan et al. pairwise merge).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>

namespace ghzq {

/// Running mean and co-moment matrix of an N-component real vector.
template <std::size_t N>
class VectorMoments {
 public:
  using Vector = std::array<double, N>;

  void add(const Vector& x) noexcept {
    ++count_;
    const double inv = 1.0 / static_cast<double>(count_);
    Vector delta;
    for (std::size_t i = 0; i < N; ++i) {
      delta[i] = x[i] - mean_[i];
      mean_[i] += delta[i] * inv;
    }
    // comoment += (x - old_mean)(x - new_mean)^T
    for (std::size_t i = 0; i < N; ++i) {
      const double post = x[i] - mean_[i];
      for (std::size_t j = 0; j < N; ++j) comoment_[i][j] += delta[j] * post;
    }
  }

  void merge(const VectorMoments& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    Vector delta;
    for (std::size_t i = 0; i < N; ++i) delta[i] = other.mean_[i] - mean_[i];
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        comoment_[i][j] += other.comoment_[i][j] + delta[i] * delta[j] * na * nb / n;
      }
    }
    for (std::size_t i = 0; i < N; ++i) mean_[i] += delta[i] * nb / n;
    count_ += other.count_;
  }

  std::uint64_t count() const noexcept { return count_; }
  const Vector& mean() const noexcept { return mean_; }
  double mean(std::size_t i) const noexcept { return mean_[i]; }

  /// Sum of (x_i - mean_i)(x_j - mean_j) over all samples.
  double comoment(std::size_t i, std::size_t j) const noexcept {
    return comoment_[i][j];
  }

  /// Unbiased sample covariance; zero with fewer than two samples.
  double covariance(std::size_t i, std::size_t j) const noexcept {
    return count_ < 2 ? 0.0 : comoment_[i][j] / static_cast<double>(count_ - 1);
  }

  /// Sample variance of the linear combination sum_i w_i x_i.
  double variance_of(const Vector& w) const noexcept {
    double v = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) v += w[i] * w[j] * covariance(i, j);
    return v > 0.0 ? v : 0.0;
  }

 private:
  std::uint64_t count_ = 0;
  Vector mean_{};
  std::array<std::array<double, N>, N> comoment_{};
};

/// Streaming statistics of a complex-valued estimator.
class MomentAccumulator {
 public:
  void add(std::complex<double> z) noexcept { moments_.add({z.real(), z.imag()}); }
  void add(double x) noexcept { moments_.add({x, 0.0}); }
  void merge(const MomentAccumulator& other) noexcept { moments_.merge(other.moments_); }

  std::uint64_t count() const noexcept { return moments_.count(); }
  std::complex<double> mean() const noexcept {
    return {moments_.mean(0), moments_.mean(1)};
  }

  /// Sum of |z - mean|^2.
  double m2() const noexcept {
    return moments_.comoment(0, 0) + moments_.comoment(1, 1);
  }

  /// Unbiased variance of |z - mean| (sum of both component variances).
  double variance() const noexcept;
  double standard_error() const noexcept;

  /// Variance of Re(z conj(axis)) for a unit complex axis.
  double variance_along(std::complex<double> axis) const noexcept;
  double standard_error_along(std::complex<double> axis) const noexcept;

  const VectorMoments<2>& components() const noexcept { return moments_; }

 private:
  VectorMoments<2> moments_;
};

}  // namespace ghzq
