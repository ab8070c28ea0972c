#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rsfade/coefficients.hpp"
#include "rsfade/grid.hpp"

namespace rsfade {

using SpatialFunction = std::function<double(double x, double y)>;
using SpaceTimeFunction = std::function<double(double x, double y, double t)>;

/// Two-dimensional Riesz space-fractional advection-dispersion problem
///
///   u_t = d_alpha D^alpha_x u + c_beta D^beta_x u
///       + d_mu    D^mu_y    u + c_nu   D^nu_y   u + s(x, y, t)
///
/// on `domain` with u = 0 on the boundary and u(x, y, 0) = initial(x, y).
struct ProblemSpec {
  std::string name;
  FractionalOrder alpha{1.8};
  FractionalOrder beta{0.9};
  FractionalOrder mu{1.6};
  FractionalOrder nu{0.7};
  double d_alpha = 0.25;
  double c_beta = 0.05;
  double d_mu = 0.25;
  double c_nu = 0.05;
  Rectangle domain{};
  double t_end = 1.0;
  SpatialFunction initial;
  SpaceTimeFunction source;
  SpaceTimeFunction exact;  // empty when no closed form is known

  bool has_exact() const noexcept { return static_cast<bool>(exact); }

  /// Order ranges, coefficient signs, callables present, and (spot-checked)
  /// vanishing of `exact` on the boundary. Throws ErrorKind::ProblemSpec.
  void validate() const;
};

/// 1 / (2 cos(pi gamma / 2)). ScalePole at gamma = 1.
double riesz_scale(double gamma);

/// Phi(gamma, z) for z in [0, 1]:
///   (z^{2-g} + (1-z)^{2-g}) / Gamma(3-g) - 6 (z^{3-g} + (1-z)^{3-g}) / Gamma(4-g)
///   + 12 (z^{4-g} + (1-z)^{4-g}) / Gamma(5-g)
double phi(FractionalOrder gamma, double z);

/// Psi(gamma, z) for z in [0, pi] ((0, pi) when gamma > 1):
///   pi (z^{1-g} + (pi-z)^{1-g}) / Gamma(2-g) - 2 (z^{2-g} + (pi-z)^{2-g}) / Gamma(3-g)
double psi(FractionalOrder gamma, double z);

/// Riesz derivative of x^2 (1-x)^2 (zero outside [0, 1]): -Phi(g, x) / cos(pi g / 2).
double riesz_derivative_poly1(double gamma, double x);

/// Riesz derivative of x (pi-x) (zero outside [0, pi]): -Psi(g, x) / (2 cos(pi g / 2)).
double riesz_derivative_poly2(double gamma, double x);

/// Orders and coefficients of a catalog problem.
struct ProblemParameters {
  double alpha;
  double beta;
  double mu;
  double nu;
  double d_alpha = 0.25;
  double c_beta = 0.05;
  double d_mu = 0.25;
  double c_nu = 0.05;
};

/// Unit square, u = x^2 y^2 (1-x)^2 (1-y)^2 sin(pi t), t_end = pi.
ProblemSpec example1();
ProblemSpec example1(const ProblemParameters& parameters, double t_end);

/// [0, pi]^2, u = x y (pi-x) (pi-y) e^{-t}, t_end = 2.
ProblemSpec example2();
ProblemSpec example2(const ProblemParameters& parameters, double t_end);

/// u == 0 with zero source and zero initial data on an arbitrary rectangle.
ProblemSpec zero_problem(const ProblemParameters& parameters, Rectangle domain, double t_end);

ProblemParameters example1_parameters();
ProblemParameters example2_parameters();

/// Names accepted by make_problem.
std::vector<std::string> catalog_names();

/// Catalog lookup; ErrorKind::UnknownProblem for an unknown name.
ProblemSpec make_problem(std::string_view name);

/// Custom problem from JSON text. Recognized keys:
///   "solution" (required; "example1" | "example2" | "zero"),
///   "name", "alpha", "beta", "mu", "nu", "d_alpha", "c_beta", "d_mu", "c_nu",
///   "t_end", "domain" ([x_lo, x_hi, y_lo, y_hi]; only with "zero").
/// Unknown keys and malformed text raise ErrorKind::Parse naming the line.
ProblemSpec parse_problem_config(std::string_view json_text);
ProblemSpec load_problem_config(const std::filesystem::path& path);

}  // namespace rsfade
