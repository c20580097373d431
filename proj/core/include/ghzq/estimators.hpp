#pragma once

// Observable estimates from Q-distribution samples.
//
// Under the spin-1/2 Q function E[3 n_i] = <sigma_i>, and the density is
// linear in the state, so the product weight
//   w = prod_j 3 (nx_j + i s_j ny_j) exp(-i s_j theta_j)
// has expectation <A>. Individual weights lie far outside the operator's
// eigenvalue range; only their average is physical.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ghzq/accumulator.hpp"
#include "ghzq/model.hpp"

namespace ghzq {

/// Weight whose Q-average is <A>. Throws std::invalid_argument on a size
/// mismatch.
std::complex<double> bell_weight(const BellConvention& conv,
                                 std::span<const BlochSample> point);

/// bell_weight with the constant phase and 3^m factor precomputed.
class BellWeigher {
 public:
  explicit BellWeigher(const BellConvention& conv);
  std::complex<double> operator()(std::span<const BlochSample> point) const noexcept;

 private:
  std::vector<double> signs_;
  std::complex<double> prefactor_;
};

struct BellEstimate {
  std::complex<double> complex_mean;
  double f_value = 0.0;
  double f_stderr = 0.0;
  std::uint64_t n_samples = 0;
  double f_qm = 0.0;
  double ratio = 0.0;
  double ratio_stderr = 0.0;
};

/// Builds the estimate from accumulated weights. f_qm comes from the closed
/// form for labeled conventions and from the dense oracle otherwise (m <= 12).
/// Throws std::invalid_argument for an empty accumulator.
BellEstimate make_bell_estimate(const GhzSpec& spec, const BellConvention& conv,
                                const MomentAccumulator& weights);

BellEstimate estimate_bell(const GhzSpec& spec, const BellConvention& conv,
                           std::span<const PhasePoint> samples);

/// Per-sample value of sum_j (sigma_z^j + 1) / 2, i.e. sum_j (3 nz_j + 1) / 2.
double spin_up_value(std::span<const BlochSample> point) noexcept;

struct SpinUpEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Throws std::invalid_argument for an empty sample set.
SpinUpEstimate spin_up_total(const GhzSpec& spec, std::span<const PhasePoint> samples);

/// Options shared by the streaming runs. Samples are drawn at global indices
/// [0, samples).
struct RunOptions {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct BellRun {
  BellEstimate bell;
  SpinUpEstimate spin_up;
  MomentAccumulator weights;
  std::uint64_t proposals = 0;
  /// Relative uncertainty of spin_up.std_error itself (from the fourth moment).
  double spin_up_stderr_rel_uncertainty = 0.0;

  double acceptance_rate() const noexcept {
    return proposals == 0 ? 0.0 : static_cast<double>(bell.n_samples) / proposals;
  }
};

/// Samples and accumulates in one pass without storing points. Results do
/// not depend on options.workers.
BellRun simulate_bell(const BellSetup& setup, const RunOptions& options);

/// One row of per-sample factor and correlation-term data.
struct ScatterRow {
  std::uint64_t index = 0;
  double factor_a = 0.0;  // Re 3(nx + i s ny) for qubit a, i.e. 3 nx_a
  double factor_b = 0.0;
  double term_xx = 0.0;   // -9 nx_a nx_b, sample value of -sigma_x sigma_x
  double term_yy = 0.0;   // +9 ny_a ny_b, sample value of +sigma_y sigma_y
};

ScatterRow scatter_row(std::span<const BlochSample> point, std::size_t qubit_a,
                       std::size_t qubit_b, std::uint64_t index) noexcept;

/// Keeps the `capacity` rows with the smallest thinning keys. Keys depend
/// only on (seed, index), so the kept set does not depend on the order in
/// which rows are offered.
class RowReservoir {
 public:
  RowReservoir(std::size_t capacity, std::uint64_t seed) noexcept
      : capacity_(capacity), seed_(seed) {}

  void offer(const ScatterRow& row);
  void merge(const RowReservoir& other);

  /// Kept rows in index order.
  std::vector<ScatterRow> rows() const;

 private:
  struct Entry {
    std::uint64_t key;
    ScatterRow row;
  };
  std::size_t capacity_;
  std::uint64_t seed_;
  std::vector<Entry> heap_;  // max-heap on (key, index)
};

/// Scatter rows for the samples in order (index = position), thinned to at
/// most row_limit rows. Throws std::out_of_range for qubit indices >= m.
std::vector<ScatterRow> scatter_data(const BellConvention& conv,
                                     std::span<const PhasePoint> samples,
                                     std::size_t qubit_a, std::size_t qubit_b,
                                     std::size_t row_limit, std::uint64_t seed = 0);

struct ScatterRun {
  std::vector<ScatterRow> rows;
  /// Moments over all samples of (factor_a, factor_b, term_xx, term_yy).
  VectorMoments<4> moments;
  std::uint64_t proposals = 0;
};

ScatterRun simulate_scatter(const BellSetup& setup, const RunOptions& options,
                            std::size_t qubit_a, std::size_t qubit_b,
                            std::size_t row_limit);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
};

/// Ordinary least squares y = intercept + slope x. Needs >= 3 points for
/// standard errors (zero otherwise). Throws std::invalid_argument for fewer
/// than 2 points or mismatched sizes.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct ScalingRow {
  int m = 0;
  BellEstimate bell;
  SpinUpEstimate spin_up;
  double rel_err_f = 0.0;  // f_stderr / F_QM
  double rel_err_n = 0.0;  // stderr(N) / (m / 2)
  double rel_err_n_uncertainty = 0.0;
};

struct ScalingStudy {
  std::vector<ScalingRow> rows;
  LinearFit log2_rel_err_f_fit;  // log2(rel_err_f) against m
};

/// Runs simulate_bell at a fixed sample count for every m. Sample streams use
/// seed + m so rows are independent.
ScalingStudy scaling_study(std::span<const int> m_list, ConventionFamily family,
                           std::uint64_t samples_per_m, std::uint64_t seed,
                           unsigned workers = 0);

}  // namespace ghzq
