#pragma once

// Exact dense state-vector reference for small m.
//
// Basis index bit (m-1-j) holds qubit j (qubit 0 is the most significant
// bit); bit value 0 is spin up.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "ghzq/model.hpp"

namespace ghzq {

inline constexpr int kOracleMaxQubits = 12;

struct StateVector {
  int qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  double norm() const noexcept;
};

/// Row-major 2x2 single-qubit operator in the (up, down) basis.
using Operator2 = std::array<std::complex<double>, 4>;

/// Throws std::invalid_argument for m above kOracleMaxQubits.
StateVector build_ghz(const GhzSpec& spec);

/// Applies op[j] to qubit j for every j.
StateVector apply_product(const StateVector& state, std::span<const Operator2> ops);

/// <a|b>
std::complex<double> inner_product(const StateVector& a, const StateVector& b);

struct OracleBell {
  std::complex<double> expectation;  // <A>
  double f = 0.0;
};

/// Exact <A> for the convention and F from its extraction rule.
OracleBell oracle_bell_value(const GhzSpec& spec, const BellConvention& conv);

enum class PauliAxis { I, X, Y, Z };

/// Exact <prod_j sigma_{axes[j]}>. Throws std::invalid_argument when the axis
/// list length differs from the qubit count.
double oracle_pauli_correlator(const StateVector& state, std::span<const PauliAxis> axes);

/// Exact <sum_j (sigma_z^j + 1) / 2>.
double oracle_spin_up_total(const StateVector& state);

/// <n_1..n_m | GHZ> with |n> = cos(t/2)|up> + e^{ia} sin(t/2)|down>, built as
/// a dense product state from the polar and azimuthal angles of each sample.
std::complex<double> coherent_overlap(const GhzSpec& spec,
                                      std::span<const BlochSample> point);

/// (1/2pi)^m |coherent_overlap|^2, the reference for q_density.
double oracle_q_density(const GhzSpec& spec, std::span<const BlochSample> point);

/// Quadrature of bell_weight * q_density over the product of spheres; equals
/// <A> when the density, the factor 3 and the phase conventions agree.
/// Throws std::invalid_argument for m > 3 or resolution < 8.
std::complex<double> oracle_q_moment_check(const GhzSpec& spec, const BellConvention& conv,
                                           int resolution);

}  // namespace ghzq
