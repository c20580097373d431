#pragma once

// SU(2) Q density of the GHZ state on a product of unit spheres.
//
// With the spin coherent state |n> = cos(t/2)|up> + e^{ia} sin(t/2)|down>
// the density is
//   Q(n_1..n_m) = (1/2pi)^m |<n_1..n_m|GHZ>|^2
//              = (1/2)(1/2pi)^m [U + D + 2 C cos(phi - sum a_j)]
// where U = prod cos^2(t_j/2), D = prod sin^2(t_j/2), C = sqrt(U D).
// It integrates to one against the product of surface measures dOmega_j.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ghzq/model.hpp"

namespace ghzq {

struct QDensityParts {
  double up_product = 1.0;     // prod cos^2(theta_j / 2)
  double down_product = 1.0;   // prod sin^2(theta_j / 2)
  double cross_product = 1.0;  // prod cos(theta_j / 2) sin(theta_j / 2)
  double phase_sum = 0.0;      // sum of azimuths
};

QDensityParts q_density_parts(std::span<const BlochSample> point);

/// Per-point normalization (2j+1)/4pi per qubit, i.e. (1/2pi)^m.
double q_kernel(int m) noexcept;

/// Normalized Q density. Throws std::invalid_argument when the point does
/// not have spec.qubits() entries.
double q_density(const GhzSpec& spec, std::span<const BlochSample> point);

/// kernel * (U + D): dominates q_density pointwise and has total mass 2.
double envelope_density(const GhzSpec& spec, std::span<const BlochSample> point);

/// q_density / envelope_density, evaluated in a form that does not underflow
/// for large m. Zero where the envelope vanishes.
double acceptance_probability(const GhzSpec& spec, std::span<const BlochSample> point);

/// Tensor-product quadrature rule on one sphere: Gauss-Legendre in cos(theta)
/// and the periodic trapezoid rule in azimuth. Weights sum to 4pi.
struct SphereRule {
  std::vector<BlochSample> nodes;
  std::vector<double> weights;
};

/// `resolution` points per angle. Throws std::invalid_argument below 8.
SphereRule make_sphere_rule(int resolution);

/// Integrates f over the m-fold product of spheres with the tensor-product
/// rule. Cost is resolution^(2m) evaluations.
template <class F>
auto integrate_product_spheres(int m, const SphereRule& rule, F&& f) {
  using Value = decltype(f(std::span<const BlochSample>{}));
  const std::size_t n = rule.nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  std::vector<BlochSample> point(static_cast<std::size_t>(m), rule.nodes[0]);
  std::vector<double> partial(static_cast<std::size_t>(m) + 1, 1.0);
  for (int j = 0; j < m; ++j) partial[j + 1] = partial[j] * rule.weights[0];

  Value total{};
  while (true) {
    total += partial[m] * f(std::span<const BlochSample>(point));
    // Odometer increment from the last qubit.
    int j = m - 1;
    while (j >= 0 && ++idx[j] == n) {
      idx[j] = 0;
      --j;
    }
    if (j < 0) break;
    for (int k = j; k < m; ++k) {
      point[k] = rule.nodes[idx[k]];
      partial[k + 1] = partial[k] * rule.weights[idx[k]];
    }
  }
  return total;
}

/// Total mass of q_density by quadrature; 1 up to rounding for any
/// resolution >= 8. Throws std::invalid_argument for m > 3 or resolution < 8.
double q_density_quadrature_check(const GhzSpec& spec, int resolution);

}  // namespace ghzq
