#pragma once

// State, measurement-convention and phase-space coordinate types shared by
// every part of the simulator.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ghzq {

/// Largest qubit count accepted by GhzSpec. Sampling cost is linear in m, so
/// the cap only guards the products in the density against underflow.
inline constexpr int kMaxQubits = 128;

/// Ratio F/F_QM above which a violation cannot be confined to fewer than m
/// parties (hybrid local/nonlocal model).
inline constexpr double kGenuineThreshold = 0.70710678118654752440;

/// M-qubit GHZ state (|up...up> + e^{i phi} |down...down>) / sqrt(2).
class GhzSpec {
 public:
  /// Throws std::invalid_argument unless 1 <= m <= kMaxQubits. The phase is
  /// reduced to [-pi, pi).
  GhzSpec(int m, double phi);

  int qubits() const noexcept { return m_; }
  double phase() const noexcept { return phi_; }

  friend bool operator==(const GhzSpec&, const GhzSpec&) = default;

 private:
  int m_;
  double phi_;
};

/// Reduces an angle to [-pi, pi).
double wrap_phase(double angle) noexcept;

/// How the real Bell quantity F is read off the complex expectation <A>.
enum class Extraction {
  NegReal,  // F = -Re <A>
  NegImag,  // F = -Im <A>
  Modulus,  // F = |<A>|
};

enum class ConventionLabel { Mermin, Ardehali, Custom };

std::string_view to_string(Extraction e) noexcept;
std::string_view to_string(ConventionLabel l) noexcept;

/// Per-qubit settings of the Bell operator
///   A = prod_j (sigma_x + i s_j sigma_y) exp(-i s_j theta_j)
/// together with the rule that turns <A> into the real quantity F.
class BellConvention {
 public:
  /// Custom convention. Signs must be +1 or -1 and both lists must have the
  /// same nonzero length.
  BellConvention(std::vector<int> signs, std::vector<double> phases,
                 Extraction extraction,
                 ConventionLabel label = ConventionLabel::Custom);

  std::size_t size() const noexcept { return signs_.size(); }
  std::span<const int> signs() const noexcept { return signs_; }
  std::span<const double> phases() const noexcept { return phases_; }
  Extraction extraction() const noexcept { return extraction_; }
  ConventionLabel label() const noexcept { return label_; }

  /// Unit complex axis u such that F = Re(<A> conj(u)). For Modulus the axis
  /// follows `reference` (normally the estimated <A>); a zero reference gives
  /// u = 1.
  std::complex<double> axis(std::complex<double> reference) const noexcept;

  /// Applies the extraction rule to a complex expectation value.
  double extract(std::complex<double> expectation) const noexcept;

  /// Returns a copy with qubits reordered: result qubit k takes the settings
  /// of qubit order[k].
  BellConvention permuted(std::span<const std::size_t> order) const;

 private:
  std::vector<int> signs_;
  std::vector<double> phases_;
  Extraction extraction_;
  ConventionLabel label_;
};

/// A state paired with the convention that measures it.
struct BellSetup {
  GhzSpec state;
  BellConvention convention;
};

/// Odd-m Mermin settings: phi = -pi/2, all s_j = 1, theta_j = 0, F = -Im<A>.
/// m = 1 is accepted as a degenerate case. Throws std::invalid_argument for
/// even m.
BellSetup mermin_convention(int m);

/// Even-m Ardehali settings: phi = pi, all s_j = +1, theta_M = -pi/4,
/// F = |<A>|. Throws std::invalid_argument for odd m.
BellSetup ardehali_convention(int m);

enum class ConventionFamily { Auto, Mermin, Ardehali };

/// Auto picks Mermin for odd m and Ardehali for even m.
BellSetup convention_for(int m, ConventionFamily family);

/// Quantum-mechanical value of F for the labeled conventions. Throws
/// std::invalid_argument for Custom conventions.
double f_qm_closed_form(const GhzSpec& spec, const BellConvention& conv);

/// Local-hidden-variable bound on F divided by F_QM: 2^{-(m-1)/2}. Throws
/// std::invalid_argument for m < 2.
double lhv_bound_ratio(int m, const BellConvention& conv);

/// One qubit's direction on the Bloch sphere.
struct BlochSample {
  double nx = 0.0;
  double ny = 0.0;
  double nz = 1.0;

  static BlochSample from_angles(double polar, double azimuth) noexcept;
  double norm_squared() const noexcept { return nx * nx + ny * ny + nz * nz; }
};

/// One draw from the Q distribution: a direction per qubit.
using PhasePoint = std::vector<BlochSample>;

}  // namespace ghzq
