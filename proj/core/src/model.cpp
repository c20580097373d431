#include "ghzq/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghzq {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double wrap_phase(double angle) noexcept {
  double r = std::fmod(angle + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  // fmod can land exactly on +pi after the shift back for inputs just below.
  return r >= kPi ? -kPi : r;
}

GhzSpec::GhzSpec(int m, double phi) : m_(m), phi_(wrap_phase(phi)) {
  if (m < 1 || m > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(m));
  }
  if (!std::isfinite(phi)) throw std::invalid_argument("phase must be finite");
}

std::string_view to_string(Extraction e) noexcept {
  switch (e) {
    case Extraction::NegReal: return "neg_real";
    case Extraction::NegImag: return "neg_imag";
    case Extraction::Modulus: return "modulus";
  }
  return "unknown";
}

std::string_view to_string(ConventionLabel l) noexcept {
  switch (l) {
    case ConventionLabel::Mermin: return "mermin";
    case ConventionLabel::Ardehali: return "ardehali";
    case ConventionLabel::Custom: return "custom";
  }
  return "unknown";
}

BellConvention::BellConvention(std::vector<int> signs,
                               std::vector<double> phases,
                               Extraction extraction, ConventionLabel label)
    : signs_(std::move(signs)),
      phases_(std::move(phases)),
      extraction_(extraction),
      label_(label) {
  if (signs_.empty() || signs_.size() != phases_.size()) {
    throw std::invalid_argument(
        "convention needs equal, nonzero numbers of signs and phases");
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  }
}

std::complex<double> BellConvention::axis(
    std::complex<double> reference) const noexcept {
  switch (extraction_) {
    case Extraction::NegReal: return {-1.0, 0.0};
    case Extraction::NegImag: return {0.0, -1.0};
    case Extraction::Modulus: {
      const double r = std::abs(reference);
      if (!(r > 0.0)) return {1.0, 0.0};
      return reference / r;
    }
  }
  return {1.0, 0.0};
}

double BellConvention::extract(std::complex<double> expectation) const noexcept {
  switch (extraction_) {
    case Extraction::NegReal: return -expectation.real();
    case Extraction::NegImag: return -expectation.imag();
    case Extraction::Modulus: return std::abs(expectation);
  }
  return 0.0;
}

BellConvention BellConvention::permuted(
    std::span<const std::size_t> order) const {
  if (order.size() != size()) {
    throw std::invalid_argument("permutation length does not match convention");
  }
  std::vector<int> s(size());
  std::vector<double> t(size());
  std::vector<bool> seen(size(), false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= size() || seen[order[k]]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[order[k]] = true;
    s[k] = signs_[order[k]];
    t[k] = phases_[order[k]];
  }
  return BellConvention(std::move(s), std::move(t), extraction_, label_);
}

BellSetup mermin_convention(int m) {
  if (m < 1 || m % 2 == 0) {
    throw std::invalid_argument("Mermin settings need an odd qubit count, got " +
                                std::to_string(m));
  }
  GhzSpec state(m, -kPi / 2.0);
  return {state, BellConvention(std::vector<int>(m, 1), std::vector<double>(m, 0.0),
                                Extraction::NegImag, ConventionLabel::Mermin)};
}

BellSetup ardehali_convention(int m) {
  if (m < 2 || m % 2 != 0) {
    throw std::invalid_argument(
        "Ardehali settings need an even qubit count >= 2, got " +
        std::to_string(m));
  }
  GhzSpec state(m, kPi);
  std::vector<double> phases(m, 0.0);
  phases.back() = -kPi / 4.0;
  return {state, BellConvention(std::vector<int>(m, 1), std::move(phases),
                                Extraction::Modulus, ConventionLabel::Ardehali)};
}

BellSetup convention_for(int m, ConventionFamily family) {
  switch (family) {
    case ConventionFamily::Mermin: return mermin_convention(m);
    case ConventionFamily::Ardehali: return ardehali_convention(m);
    case ConventionFamily::Auto: break;
  }
  return m % 2 == 1 ? mermin_convention(m) : ardehali_convention(m);
}

double f_qm_closed_form(const GhzSpec& spec, const BellConvention& conv) {
  if (conv.size() != static_cast<std::size_t>(spec.qubits())) {
    throw std::invalid_argument("convention size does not match state");
  }
  switch (conv.label()) {
    // |<A>| = 2^m |<up...up| prod sigma_+ |down...down>| / 2 = 2^{m-1}; the
    // labeled phases put all of it on the extraction axis.
    case ConventionLabel::Mermin:
    case ConventionLabel::Ardehali:
      return std::ldexp(1.0, spec.qubits() - 1);
    case ConventionLabel::Custom: break;
  }
  throw std::invalid_argument(
      "no closed form for custom conventions; use oracle_bell_value");
}

double lhv_bound_ratio(int m, const BellConvention& /*conv*/) {
  if (m < 2) throw std::invalid_argument("LHV ratio needs m >= 2");
  return std::exp2(-0.5 * (m - 1));
}

BlochSample BlochSample::from_angles(double polar, double azimuth) noexcept {
  const double s = std::sin(polar);
  return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)};
}

}  // namespace ghzq
