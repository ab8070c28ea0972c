#include "rsfade/coefficients.hpp"

#include <cmath>
#include <string>

#include "rsfade/error.hpp"

namespace rsfade {

FractionalOrder::FractionalOrder(double gamma) : gamma_(gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0 || gamma > 2.0) {
    throw Error(ErrorKind::OrderDomain,
                "fractional order " + std::to_string(gamma) + " outside (0,1) U (1,2]");
  }
  if (gamma == 1.0) {
    throw Error(ErrorKind::OrderDomain, "fractional order 1 is excluded (Riesz scale pole)");
  }
}

double CoefficientSet::omega_at(long k) const noexcept {
  const auto index = static_cast<std::size_t>(k < 0 ? -k : k);
  return index < omega.size() ? omega[index] : 0.0;
}

RhoWeights rho_coefficients(FractionalOrder gamma) {
  const double g = gamma.value();
  return {-g / 24.0, 1.0 + g / 12.0, -g / 24.0};
}

CoefficientSet omega_coefficients(FractionalOrder gamma, std::size_t K) {
  if (K == 0) {
    throw Error(ErrorKind::Argument, "truncation count K must be positive");
  }
  const double half = 0.5 * gamma.value();
  std::vector<double> omega(K + 1);
  omega[0] = std::tgamma(gamma.value() + 1.0) / std::pow(std::tgamma(half + 1.0), 2);
  for (std::size_t k = 0; k < K; ++k) {
    const auto kd = static_cast<double>(k);
    omega[k + 1] = omega[k] * (kd - half) / (kd + 1.0 + half);
  }
  return CoefficientSet{gamma, std::move(omega), rho_coefficients(gamma)};
}

double generating_function(const CoefficientSet& coefficients, double z) {
  if (!std::isfinite(z)) {
    throw Error(ErrorKind::Argument, "generating function needs a finite angle");
  }
  // Smallest terms first.
  double tail = 0.0;
  for (std::size_t k = coefficients.truncation(); k >= 1; --k) {
    tail += coefficients.omega[k] * std::cos(static_cast<double>(k) * z);
  }
  return coefficients.omega[0] + 2.0 * tail;
}

double generating_function(FractionalOrder gamma, double z, std::size_t K) {
  return generating_function(omega_coefficients(gamma, K), z);
}

}  // namespace rsfade
