#include "ghzq/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ghzq/parallel.hpp"
#include "ghzq/sampler.hpp"

namespace ghzq {

void NoiseSpec::validate() const {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw std::invalid_argument("noise strength must be finite and >= 0");
  }
  if (steps < 0) throw std::invalid_argument("step count must be >= 0");
}

std::complex<double> apply_dephasing(std::complex<double> weight, int m,
                                     const NoiseSpec& noise, std::uint64_t sample_index) {
  if (noise.steps == 0 || noise.epsilon == 0.0) return weight;
  NoiseStream zeta(noise.seed, sample_index);
  const double scale = noise.epsilon * m;
  double phase = 0.0;
  for (int t = 0; t < noise.steps; ++t) phase += scale * zeta.next();
  return weight * std::polar(1.0, phase);
}

double analytic_decay(double epsilon, int m, int tau) noexcept {
  const double em = epsilon * m;
  return std::exp(-0.5 * em * em * tau);
}

DecayCurve decay_curve(const BellSetup& setup, const NoiseSpec& noise,
                       std::uint64_t samples_per_point, unsigned workers) {
  noise.validate();
  if (samples_per_point == 0) throw std::invalid_argument("sample count must be positive");
  const GhzSpec& spec = setup.state;
  const int m = spec.qubits();
  const BellWeigher weigh(setup.convention);
  const std::size_t points = static_cast<std::size_t>(noise.steps) + 1;
  const double scale = noise.epsilon * m;

  // Per tau: moments of (Re z, Im z, Re w, Im w) with z the noisy weight.
  using Moments = std::vector<VectorMoments<4>>;
  auto partials = map_chunks(
      0, samples_per_point, workers, [&](std::uint64_t begin, std::uint64_t count) {
        Moments part(points);
        PointSampler sampler(spec);
        PhasePoint point(m);
        for (std::uint64_t k = begin; k < begin + count; ++k) {
          sampler.draw(noise.seed, k, point);
          const std::complex<double> w = weigh(point);
          NoiseStream zeta(noise.seed, k);
          double phase = 0.0;
          for (std::size_t tau = 0; tau < points; ++tau) {
            if (tau > 0 && scale != 0.0) phase += scale * zeta.next();
            const std::complex<double> z = phase == 0.0 ? w : w * std::polar(1.0, phase);
            part[tau].add({z.real(), z.imag(), w.real(), w.imag()});
          }
        }
        return part;
      });

  Moments total(points);
  for (const auto& part : partials)
    for (std::size_t tau = 0; tau < points; ++tau) total[tau].merge(part[tau]);

  const auto& base = total[0];
  const std::complex<double> axis =
      setup.convention.axis({base.mean(2), base.mean(3)});
  const double ur = axis.real();
  const double ui = axis.imag();
  const double f0 = base.mean(2) * ur + base.mean(3) * ui;
  const double n = static_cast<double>(samples_per_point);

  DecayCurve curve;
  curve.m = m;
  curve.samples = samples_per_point;
  for (std::size_t tau = 0; tau < points; ++tau) {
    const auto& mom = total[tau];
    DecayPoint p;
    p.tau = static_cast<int>(tau);
    p.f_value = mom.mean(0) * ur + mom.mean(1) * ui;
    p.f_ratio = p.f_value / f0;
    p.analytic_ratio = analytic_decay(noise.epsilon, m, p.tau);
    // Delta method for a/b with correlated numerator and denominator.
    const double var_a = mom.variance_of({ur, ui, 0.0, 0.0});
    const double var_b = mom.variance_of({0.0, 0.0, ur, ui});
    const double cov_ab = ur * ur * mom.covariance(0, 2) + ur * ui * mom.covariance(0, 3) +
                          ui * ur * mom.covariance(1, 2) + ui * ui * mom.covariance(1, 3);
    const double r = p.f_ratio;
    const double var_r = (var_a - 2.0 * r * cov_ab + r * r * var_b) / (f0 * f0 * n);
    p.stderr_ratio = std::sqrt(std::max(0.0, var_r));
    curve.points.push_back(p);
  }
  return curve;
}

double fit_decay_rate(const DecayCurve& curve) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& p : curve.points) {
    if (p.tau == 0 || !(p.stderr_ratio > 0.0) || p.f_ratio <= 3.0 * p.stderr_ratio) continue;
    // y = -ln R has stderr ~ stderr_R / R.
    const double w = (p.f_ratio / p.stderr_ratio) * (p.f_ratio / p.stderr_ratio);
    num += w * p.tau * -std::log(p.f_ratio);
    den += w * p.tau * p.tau;
  }
  return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

LinearFit fit_rate_exponent(std::span<const DecayCurve> curves) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& c : curves) {
    const double rate = fit_decay_rate(c);
    if (!(rate > 0.0)) continue;
    x.push_back(std::log(static_cast<double>(c.m)));
    y.push_back(std::log(rate));
  }
  return fit_line(x, y);
}

}  // namespace ghzq
