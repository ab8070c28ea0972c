#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rsfade {

/// Order gamma of a Riesz fractional derivative, gamma in (0,1) U (1,2].
///
/// gamma = 1 is excluded because the Riesz scale 1/(2 cos(pi*gamma/2)) has a
/// pole there. Construction throws ErrorKind::OrderDomain for invalid values.
class FractionalOrder {
 public:
  explicit FractionalOrder(double gamma);

  double value() const noexcept { return gamma_; }
  bool is_dispersive() const noexcept { return gamma_ > 1.0; }

  friend bool operator==(FractionalOrder, FractionalOrder) = default;

 private:
  double gamma_;
};

/// Fourth-order correction weights (rho_{-1}, rho_0, rho_1).
using RhoWeights = std::array<double, 3>;

/// Fractional centered-difference weights for one order.
///
/// `omega` stores the symmetric half omega_0..omega_K; omega_{-k} = omega_k.
struct CoefficientSet {
  FractionalOrder gamma;
  std::vector<double> omega;
  RhoWeights rho;

  std::size_t truncation() const noexcept { return omega.empty() ? 0 : omega.size() - 1; }

  /// omega_k for any signed k (zero beyond the stored truncation).
  double omega_at(long k) const noexcept;
};

/// (-gamma/24, 1 + gamma/12, -gamma/24)
RhoWeights rho_coefficients(FractionalOrder gamma);

/// omega_0..omega_K from the multiplicative recurrence
///   omega_0     = Gamma(gamma+1) / Gamma(gamma/2+1)^2
///   omega_{k+1} = omega_k * (k - gamma/2) / (k + 1 + gamma/2)
/// Throws ErrorKind::Argument when K == 0.
CoefficientSet omega_coefficients(FractionalOrder gamma, std::size_t K);

/// Truncated symbol omega_0 + 2 sum_{k=1..K} omega_k cos(k z), which tends to
/// |2 sin(z/2)|^gamma as K grows.
double generating_function(FractionalOrder gamma, double z, std::size_t K);
double generating_function(const CoefficientSet& coefficients, double z);

}  // namespace rsfade
