#include "ghzq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ghzq/estimators.hpp"
#include "ghzq/qfunction.hpp"

namespace ghzq {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void check_cap(int m) {
  if (m > kOracleMaxQubits) {
    throw std::invalid_argument("dense oracle is limited to " +
                                std::to_string(kOracleMaxQubits) + " qubits, got " +
                                std::to_string(m));
  }
}

constexpr Operator2 kIdentity{cd{1}, cd{0}, cd{0}, cd{1}};
constexpr Operator2 kSigmaX{cd{0}, cd{1}, cd{1}, cd{0}};
constexpr Operator2 kSigmaY{cd{0}, cd{0, -1}, cd{0, 1}, cd{0}};
constexpr Operator2 kSigmaZ{cd{1}, cd{0}, cd{0}, cd{-1}};

const Operator2& pauli(PauliAxis a) {
  switch (a) {
    case PauliAxis::X: return kSigmaX;
    case PauliAxis::Y: return kSigmaY;
    case PauliAxis::Z: return kSigmaZ;
    case PauliAxis::I: break;
  }
  return kIdentity;
}

}  // namespace

double StateVector::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

StateVector build_ghz(const GhzSpec& spec) {
  check_cap(spec.qubits());
  StateVector psi;
  psi.qubits = spec.qubits();
  psi.amplitudes.assign(std::size_t{1} << spec.qubits(), cd{0.0});
  psi.amplitudes.front() = std::numbers::sqrt2 / 2.0;
  psi.amplitudes.back() = std::polar(std::numbers::sqrt2 / 2.0, spec.phase());
  return psi;
}

StateVector apply_product(const StateVector& state, std::span<const Operator2> ops) {
  if (ops.size() != static_cast<std::size_t>(state.qubits)) {
    throw std::invalid_argument("operator count does not match qubit count");
  }
  StateVector out = state;
  const std::size_t dim = out.amplitudes.size();
  for (int j = 0; j < state.qubits; ++j) {
    const std::size_t bit = std::size_t{1} << (state.qubits - 1 - j);
    const auto& op = ops[j];
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const cd up = out.amplitudes[i];
      const cd down = out.amplitudes[i | bit];
      out.amplitudes[i] = op[0] * up + op[1] * down;
      out.amplitudes[i | bit] = op[2] * up + op[3] * down;
    }
  }
  return out;
}

cd inner_product(const StateVector& a, const StateVector& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("state dimensions differ");
  }
  cd s{0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return s;
}

OracleBell oracle_bell_value(const GhzSpec& spec, const BellConvention& conv) {
  if (conv.size() != static_cast<std::size_t>(spec.qubits())) {
    throw std::invalid_argument("convention size does not match state");
  }
  const StateVector psi = build_ghz(spec);
  std::vector<Operator2> ops(conv.size());
  for (std::size_t j = 0; j < conv.size(); ++j) {
    const double s = conv.signs()[j];
    const cd phase = std::polar(1.0, -s * conv.phases()[j]);
    for (int k = 0; k < 4; ++k) ops[j][k] = (kSigmaX[k] + kI * s * kSigmaY[k]) * phase;
  }
  const cd expectation = inner_product(psi, apply_product(psi, ops));
  return {expectation, conv.extract(expectation)};
}

double oracle_pauli_correlator(const StateVector& state, std::span<const PauliAxis> axes) {
  check_cap(state.qubits);
  if (axes.size() != static_cast<std::size_t>(state.qubits)) {
    throw std::invalid_argument("axis list length does not match qubit count");
  }
  std::vector<Operator2> ops;
  ops.reserve(axes.size());
  for (auto a : axes) ops.push_back(pauli(a));
  return inner_product(state, apply_product(state, ops)).real();
}

double oracle_spin_up_total(const StateVector& state) {
  double total = 0.0;
  std::vector<PauliAxis> axes(state.qubits, PauliAxis::I);
  for (int j = 0; j < state.qubits; ++j) {
    axes[j] = PauliAxis::Z;
    total += 0.5 * (oracle_pauli_correlator(state, axes) + 1.0);
    axes[j] = PauliAxis::I;
  }
  return total;
}

cd coherent_overlap(const GhzSpec& spec, std::span<const BlochSample> point) {
  if (point.size() != static_cast<std::size_t>(spec.qubits())) {
    throw std::invalid_argument("phase point size does not match state");
  }
  check_cap(spec.qubits());
  StateVector coherent;
  coherent.qubits = spec.qubits();
  coherent.amplitudes.assign(std::size_t{1} << spec.qubits(), cd{1.0});
  const std::size_t dim = coherent.amplitudes.size();
  for (int j = 0; j < spec.qubits(); ++j) {
    const auto& q = point[j];
    const double theta = std::acos(std::clamp(q.nz, -1.0, 1.0));
    const double azimuth = std::atan2(q.ny, q.nx);
    const cd up = std::cos(theta / 2.0);
    const cd down = std::polar(std::sin(theta / 2.0), azimuth);
    const std::size_t bit = std::size_t{1} << (spec.qubits() - 1 - j);
    for (std::size_t i = 0; i < dim; ++i) coherent.amplitudes[i] *= (i & bit) ? down : up;
  }
  return inner_product(coherent, build_ghz(spec));
}

double oracle_q_density(const GhzSpec& spec, std::span<const BlochSample> point) {
  return std::pow(2.0 * std::numbers::pi, -spec.qubits()) *
         std::norm(coherent_overlap(spec, point));
}

cd oracle_q_moment_check(const GhzSpec& spec, const BellConvention& conv, int resolution) {
  if (spec.qubits() > 3) {
    throw std::invalid_argument("moment quadrature is limited to m <= 3");
  }
  if (conv.size() != static_cast<std::size_t>(spec.qubits())) {
    throw std::invalid_argument("convention size does not match state");
  }
  const auto rule = make_sphere_rule(resolution);
  const BellWeigher weigh(conv);
  return integrate_product_spheres(spec.qubits(), rule, [&](std::span<const BlochSample> p) {
    return weigh(p) * q_density(spec, p);
  });
}

}  // namespace ghzq
