#pragma once

// Independent reference computations used only by the tests. They share no
// code with the library: coefficients come from the closed gamma-function
// formula, operators from the defining triple sum, and Riesz derivatives
// from the Riemann-Liouville power rule applied monomial by monomial.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// (-1)^k Gamma(g+1) / (Gamma(g/2-k+1) Gamma(g/2+k+1)), zero at the poles of
/// the first denominator factor.
inline double omega_direct(double g, long k) {
  k = k < 0 ? -k : k;
  const double a = g / 2.0 - static_cast<double>(k) + 1.0;
  if (a <= 0.0 && a == std::floor(a)) return 0.0;
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * std::tgamma(g + 1.0) /
         (std::tgamma(a) * std::tgamma(g / 2.0 + static_cast<double>(k) + 1.0));
}

/// h^{-g} sum_{r=-1..1} rho_r omega_{i-l-r}, entry by entry.
inline Eigen::MatrixXd riesz_matrix_by_definition(double g, std::size_t n, double h) {
  const double rho[3] = {-g / 24.0, 1.0 + g / 12.0, -g / 24.0};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      double entry = 0.0;
      for (int r = -1; r <= 1; ++r) {
        entry += rho[r + 1] * omega_direct(g, static_cast<long>(i) - static_cast<long>(l) - r);
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = std::pow(h, -g) * entry;
    }
  }
  return m;
}

struct Monomial {
  double coefficient;
  double power;
};

/// Left Riemann-Liouville derivative of sum c_p s^p at distance s from the
/// left end: sum c_p Gamma(p+1) / Gamma(p+1-g) s^{p-g}.
inline double left_rl(const std::vector<Monomial>& poly, double g, double s) {
  double total = 0.0;
  for (const auto& term : poly) {
    total += term.coefficient * std::tgamma(term.power + 1.0) / std::tgamma(term.power + 1.0 - g) *
             std::pow(s, term.power - g);
  }
  return total;
}

/// Riesz derivative at x of a polynomial on [0, length], zero outside, that
/// is symmetric about the midpoint (so the right derivative at x is the
/// left derivative at length - x).
inline double riesz_symmetric_poly(const std::vector<Monomial>& poly, double g, double x,
                                   double length) {
  const double kappa = 1.0 / (2.0 * std::cos(std::numbers::pi * g / 2.0));
  return -kappa * (left_rl(poly, g, x) + left_rl(poly, g, length - x));
}

/// x^2 (1-x)^2 = x^2 - 2x^3 + x^4 on [0, 1].
inline double riesz_quartic_bump(double g, double x) {
  return riesz_symmetric_poly({{1.0, 2.0}, {-2.0, 3.0}, {1.0, 4.0}}, g, x, 1.0);
}

/// x (pi-x) = pi x - x^2 on [0, pi].
inline double riesz_pi_parabola(double g, double x) {
  return riesz_symmetric_poly({{std::numbers::pi, 1.0}, {-1.0, 2.0}}, g, x, std::numbers::pi);
}

}  // namespace oracle
