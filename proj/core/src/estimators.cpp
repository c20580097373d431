#include "ghzq/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ghzq/oracle.hpp"
#include "ghzq/parallel.hpp"
#include "ghzq/rng.hpp"
#include "ghzq/sampler.hpp"

namespace ghzq {

namespace {

void check_size(const BellConvention& conv, std::span<const BlochSample> point) {
  if (point.size() != conv.size()) {
    throw std::invalid_argument("phase point has " + std::to_string(point.size()) +
                                " qubits, convention has " + std::to_string(conv.size()));
  }
}

// Shifted power sums of a real estimator, for the uncertainty of its
// standard error. Merging is plain addition.
struct PowerSums {
  double shift = 0.0;
  std::uint64_t n = 0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

  void add(double x) noexcept {
    const double d = x - shift;
    const double d2 = d * d;
    ++n;
    s1 += d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
  }
  void merge(const PowerSums& o) noexcept {
    n += o.n;
    s1 += o.s1;
    s2 += o.s2;
    s3 += o.s3;
    s4 += o.s4;
  }
  // sd(s) / s ~ sqrt((kurtosis - 1) / (4n)) for the sample standard deviation s.
  double stderr_rel_uncertainty() const noexcept {
    if (n < 4) return 0.0;
    const double nn = static_cast<double>(n);
    const double mu = s1 / nn;
    const double m2 = s2 / nn - mu * mu;
    const double m4 = s4 / nn - 4.0 * mu * s3 / nn + 6.0 * mu * mu * s2 / nn -
                      3.0 * mu * mu * mu * mu;
    if (!(m2 > 0.0)) return 0.0;
    const double kurtosis = m4 / (m2 * m2);
    return std::sqrt(std::max(0.0, kurtosis - 1.0) / (4.0 * nn));
  }
};

double reference_f(const GhzSpec& spec, const BellConvention& conv) {
  if (conv.label() != ConventionLabel::Custom) return f_qm_closed_form(spec, conv);
  return oracle_bell_value(spec, conv).f;
}

void check_qubits(const BellSetup& setup, std::size_t a, std::size_t b) {
  const auto m = static_cast<std::size_t>(setup.state.qubits());
  if (a >= m || b >= m) {
    throw std::out_of_range("qubit index out of range for m = " + std::to_string(m));
  }
}

}  // namespace

std::complex<double> bell_weight(const BellConvention& conv,
                                 std::span<const BlochSample> point) {
  check_size(conv, point);
  std::complex<double> w = 1.0;
  const auto s = conv.signs();
  const auto theta = conv.phases();
  for (std::size_t j = 0; j < point.size(); ++j) {
    w *= 3.0 * std::complex<double>(point[j].nx, s[j] * point[j].ny) *
         std::polar(1.0, -s[j] * theta[j]);
  }
  return w;
}

BellWeigher::BellWeigher(const BellConvention& conv)
    : signs_(conv.signs().begin(), conv.signs().end()) {
  double phase = 0.0;
  for (std::size_t j = 0; j < conv.size(); ++j) phase -= conv.signs()[j] * conv.phases()[j];
  prefactor_ = std::polar(std::pow(3.0, static_cast<double>(conv.size())), phase);
}

std::complex<double> BellWeigher::operator()(
    std::span<const BlochSample> point) const noexcept {
  std::complex<double> w = prefactor_;
  for (std::size_t j = 0; j < point.size(); ++j) {
    w *= std::complex<double>(point[j].nx, signs_[j] * point[j].ny);
  }
  return w;
}

BellEstimate make_bell_estimate(const GhzSpec& spec, const BellConvention& conv,
                                const MomentAccumulator& weights) {
  if (weights.count() == 0) throw std::invalid_argument("no samples to estimate from");
  BellEstimate e;
  e.complex_mean = weights.mean();
  e.n_samples = weights.count();
  e.f_value = conv.extract(e.complex_mean);
  e.f_stderr = weights.standard_error_along(conv.axis(e.complex_mean));
  e.f_qm = reference_f(spec, conv);
  e.ratio = e.f_value / e.f_qm;
  e.ratio_stderr = e.f_stderr / std::abs(e.f_qm);
  return e;
}

BellEstimate estimate_bell(const GhzSpec& spec, const BellConvention& conv,
                           std::span<const PhasePoint> samples) {
  if (samples.empty()) throw std::invalid_argument("no samples to estimate from");
  MomentAccumulator acc;
  for (const auto& p : samples) acc.add(bell_weight(conv, p));
  return make_bell_estimate(spec, conv, acc);
}

double spin_up_value(std::span<const BlochSample> point) noexcept {
  double n = 0.0;
  for (const auto& q : point) n += 0.5 * (3.0 * q.nz + 1.0);
  return n;
}

SpinUpEstimate spin_up_total(const GhzSpec& spec, std::span<const PhasePoint> samples) {
  if (samples.empty()) throw std::invalid_argument("no samples to estimate from");
  MomentAccumulator acc;
  for (const auto& p : samples) {
    if (p.size() != static_cast<std::size_t>(spec.qubits())) {
      throw std::invalid_argument("phase point size does not match state");
    }
    acc.add(spin_up_value(p));
  }
  return {acc.mean().real(), acc.standard_error()};
}

BellRun simulate_bell(const BellSetup& setup, const RunOptions& options) {
  if (options.samples == 0) throw std::invalid_argument("sample count must be positive");
  const GhzSpec& spec = setup.state;
  const BellWeigher weigh(setup.convention);
  const double shift = 0.5 * spec.qubits();

  struct Partial {
    MomentAccumulator weights;
    MomentAccumulator spin;
    PowerSums spin_sums;
    std::uint64_t proposals = 0;
  };

  auto partials = map_chunks(0, options.samples, options.workers,
                             [&](std::uint64_t begin, std::uint64_t count) {
                               Partial part;
                               part.spin_sums.shift = shift;
                               PointSampler sampler(spec);
                               PhasePoint point(spec.qubits());
                               for (std::uint64_t k = begin; k < begin + count; ++k) {
                                 part.proposals += sampler.draw(options.seed, k, point);
                                 part.weights.add(weigh(point));
                                 const double n = spin_up_value(point);
                                 part.spin.add(n);
                                 part.spin_sums.add(n);
                               }
                               return part;
                             });

  Partial total;
  total.spin_sums.shift = shift;
  for (const auto& p : partials) {
    total.weights.merge(p.weights);
    total.spin.merge(p.spin);
    total.spin_sums.merge(p.spin_sums);
    total.proposals += p.proposals;
  }

  BellRun run;
  run.bell = make_bell_estimate(spec, setup.convention, total.weights);
  run.spin_up = {total.spin.mean().real(), total.spin.standard_error()};
  run.weights = total.weights;
  run.proposals = total.proposals;
  run.spin_up_stderr_rel_uncertainty = total.spin_sums.stderr_rel_uncertainty();
  return run;
}

ScatterRow scatter_row(std::span<const BlochSample> point, std::size_t qubit_a,
                       std::size_t qubit_b, std::uint64_t index) noexcept {
  const auto& a = point[qubit_a];
  const auto& b = point[qubit_b];
  return {index, 3.0 * a.nx, 3.0 * b.nx, -9.0 * a.nx * b.nx, 9.0 * a.ny * b.ny};
}

namespace {

struct EntryLess {
  template <class E>
  bool operator()(const E& x, const E& y) const noexcept {
    return x.key != y.key ? x.key < y.key : x.row.index < y.row.index;
  }
};

}  // namespace

void RowReservoir::offer(const ScatterRow& row) {
  if (capacity_ == 0) return;
  const Entry e{counter_hash(seed_, row.index, StreamTag::Thinning), row};
  if (heap_.size() < capacity_) {
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), EntryLess{});
  } else if (EntryLess{}(e, heap_.front())) {
    std::pop_heap(heap_.begin(), heap_.end(), EntryLess{});
    heap_.back() = e;
    std::push_heap(heap_.begin(), heap_.end(), EntryLess{});
  }
}

void RowReservoir::merge(const RowReservoir& other) {
  for (const auto& e : other.heap_) offer(e.row);
}

std::vector<ScatterRow> RowReservoir::rows() const {
  std::vector<ScatterRow> out;
  out.reserve(heap_.size());
  for (const auto& e : heap_) out.push_back(e.row);
  std::sort(out.begin(), out.end(),
            [](const ScatterRow& x, const ScatterRow& y) { return x.index < y.index; });
  return out;
}

std::vector<ScatterRow> scatter_data(const BellConvention& conv,
                                     std::span<const PhasePoint> samples,
                                     std::size_t qubit_a, std::size_t qubit_b,
                                     std::size_t row_limit, std::uint64_t seed) {
  if (qubit_a >= conv.size() || qubit_b >= conv.size()) {
    throw std::out_of_range("qubit index out of range for m = " +
                            std::to_string(conv.size()));
  }
  RowReservoir reservoir(row_limit, seed);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    check_size(conv, samples[k]);
    reservoir.offer(scatter_row(samples[k], qubit_a, qubit_b, k));
  }
  return reservoir.rows();
}

ScatterRun simulate_scatter(const BellSetup& setup, const RunOptions& options,
                            std::size_t qubit_a, std::size_t qubit_b,
                            std::size_t row_limit) {
  if (options.samples == 0) throw std::invalid_argument("sample count must be positive");
  check_qubits(setup, qubit_a, qubit_b);
  const GhzSpec& spec = setup.state;

  struct Partial {
    RowReservoir reservoir{0, 0};
    VectorMoments<4> moments;
    std::uint64_t proposals = 0;
  };

  auto partials = map_chunks(0, options.samples, options.workers,
                             [&](std::uint64_t begin, std::uint64_t count) {
                               Partial part;
                               part.reservoir = RowReservoir(row_limit, options.seed);
                               PointSampler sampler(spec);
                               PhasePoint point(spec.qubits());
                               for (std::uint64_t k = begin; k < begin + count; ++k) {
                                 part.proposals += sampler.draw(options.seed, k, point);
                                 const auto row = scatter_row(point, qubit_a, qubit_b, k);
                                 part.moments.add(
                                     {row.factor_a, row.factor_b, row.term_xx, row.term_yy});
                                 part.reservoir.offer(row);
                               }
                               return part;
                             });

  RowReservoir reservoir(row_limit, options.seed);
  ScatterRun run;
  for (const auto& p : partials) {
    reservoir.merge(p.reservoir);
    run.moments.merge(p.moments);
    run.proposals += p.proposals;
  }
  run.rows = reservoir.rows();
  return run;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("line fit needs at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("line fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() >= 3) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      ssr += r * r;
    }
    const double s2 = ssr / (n - 2.0);
    fit.slope_stderr = std::sqrt(s2 / sxx);
    fit.intercept_stderr = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  }
  return fit;
}

ScalingStudy scaling_study(std::span<const int> m_list, ConventionFamily family,
                           std::uint64_t samples_per_m, std::uint64_t seed,
                           unsigned workers) {
  ScalingStudy study;
  std::vector<double> xs;
  std::vector<double> ys;
  for (int m : m_list) {
    const auto setup = convention_for(m, family);
    const auto run = simulate_bell(
        setup, {samples_per_m, seed + static_cast<std::uint64_t>(m), workers});
    ScalingRow row;
    row.m = m;
    row.bell = run.bell;
    row.spin_up = run.spin_up;
    row.rel_err_f = run.bell.f_stderr / std::abs(run.bell.f_qm);
    row.rel_err_n = run.spin_up.std_error / (0.5 * m);
    row.rel_err_n_uncertainty = row.rel_err_n * run.spin_up_stderr_rel_uncertainty;
    study.rows.push_back(row);
    xs.push_back(m);
    ys.push_back(std::log2(row.rel_err_f));
  }
  if (xs.size() >= 2) study.log2_rel_err_f_fit = fit_line(xs, ys);
  return study;
}

}  // namespace ghzq
