#include "ghzq/accumulator.hpp"

namespace ghzq {

double MomentAccumulator::variance() const noexcept {
  return moments_.covariance(0, 0) + moments_.covariance(1, 1);
}

double MomentAccumulator::standard_error() const noexcept {
  const auto n = count();
  return n == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n));
}

double MomentAccumulator::variance_along(std::complex<double> axis) const noexcept {
  // Re(z conj(u)) = zr*ur + zi*ui
  return moments_.variance_of({axis.real(), axis.imag()});
}

double MomentAccumulator::standard_error_along(std::complex<double> axis) const noexcept {
  const auto n = count();
  return n == 0 ? 0.0 : std::sqrt(variance_along(axis) / static_cast<double>(n));
}

}  // namespace ghzq
