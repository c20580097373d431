#include "ghzq/qfunction.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghzq {

namespace {

constexpr double kPi = std::numbers::pi;

void check_size(const GhzSpec& spec, std::span<const BlochSample> point) {
  if (point.size() != static_cast<std::size_t>(spec.qubits())) {
    throw std::invalid_argument("phase point has " + std::to_string(point.size()) +
                                " qubits, state has " +
                                std::to_string(spec.qubits()));
  }
}

double half_up(double nz) noexcept { return std::clamp(0.5 * (1.0 + nz), 0.0, 1.0); }
double half_down(double nz) noexcept { return std::clamp(0.5 * (1.0 - nz), 0.0, 1.0); }

}  // namespace

QDensityParts q_density_parts(std::span<const BlochSample> point) {
  QDensityParts parts;
  for (const auto& q : point) {
    const double u = half_up(q.nz);
    const double d = half_down(q.nz);
    parts.up_product *= u;
    parts.down_product *= d;
    parts.cross_product *= std::sqrt(u * d);
    parts.phase_sum += std::atan2(q.ny, q.nx);
  }
  return parts;
}

double q_kernel(int m) noexcept { return std::pow(2.0 * kPi, -m); }

double q_density(const GhzSpec& spec, std::span<const BlochSample> point) {
  check_size(spec, point);
  // <n|GHZ> = (prod cos(t/2) + e^{i phi} prod sin(t/2) e^{-i a}) / sqrt(2)
  double up = 1.0;
  std::complex<double> down = std::polar(1.0, spec.phase());
  for (const auto& q : point) {
    up *= std::sqrt(half_up(q.nz));
    const double rho = std::hypot(q.nx, q.ny);
    const std::complex<double> conj_phase =
        rho > 0.0 ? std::complex<double>(q.nx, -q.ny) / rho : 1.0;
    down *= std::sqrt(half_down(q.nz)) * conj_phase;
  }
  return q_kernel(spec.qubits()) * 0.5 * std::norm(up + down);
}

double envelope_density(const GhzSpec& spec, std::span<const BlochSample> point) {
  check_size(spec, point);
  const auto parts = q_density_parts(point);
  return q_kernel(spec.qubits()) * (parts.up_product + parts.down_product);
}

double acceptance_probability(const GhzSpec& spec, std::span<const BlochSample> point) {
  check_size(spec, point);
  // Q / envelope = (1 + cos(phi - sum a) * 2 sqrt(UD) / (U + D)) / 2, and
  // 2 sqrt(UD) / (U + D) = 1 / cosh(L / 2) with L = ln(U / D).
  double log_ratio = 0.0;
  std::complex<double> phasor = 1.0;
  for (const auto& q : point) {
    log_ratio += std::log1p(q.nz) - std::log1p(-q.nz);
    const double rho = std::hypot(q.nx, q.ny);
    if (rho > 0.0) phasor *= std::complex<double>(q.nx, q.ny) / rho;
  }
  if (std::isnan(log_ratio)) return 0.0;  // both branches vanish
  const double interference =
      std::real(std::polar(1.0, spec.phase()) * std::conj(phasor)) /
      std::cosh(0.5 * log_ratio);
  return std::clamp(0.5 * (1.0 + interference), 0.0, 1.0);
}

SphereRule make_sphere_rule(int resolution) {
  if (resolution < 8) {
    throw std::invalid_argument("quadrature needs at least 8 points per angle");
  }
  // Positive Legendre zeros; the rule is symmetric about zero.
  const auto zeros = boost::math::legendre_p_zeros<double>(resolution);
  std::vector<double> x;
  std::vector<double> w;
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(resolution, z);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x.push_back(z);
    w.push_back(weight);
    if (z != 0.0) {
      x.push_back(-z);
      w.push_back(weight);
    }
  }

  SphereRule rule;
  const double dphi = 2.0 * kPi / resolution;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sin_t = std::sqrt(1.0 - x[i] * x[i]);
    for (int k = 0; k < resolution; ++k) {
      const double a = (k + 0.5) * dphi;
      rule.nodes.push_back({sin_t * std::cos(a), sin_t * std::sin(a), x[i]});
      rule.weights.push_back(w[i] * dphi);
    }
  }
  return rule;
}

double q_density_quadrature_check(const GhzSpec& spec, int resolution) {
  if (spec.qubits() > 3) {
    throw std::invalid_argument("quadrature check is limited to m <= 3");
  }
  const auto rule = make_sphere_rule(resolution);
  return integrate_product_spheres(
      spec.qubits(), rule,
      [&](std::span<const BlochSample> p) { return q_density(spec, p); });
}

}  // namespace ghzq
