#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "rsfade/grid.hpp"
#include "rsfade/problem.hpp"

namespace rsfade {

/// Interior values u(x_{i+1}, y_{j+1}, t) stored as an nx x ny matrix.
struct SolutionField {
  Eigen::MatrixXd values;
  double t = 0.0;
  std::size_t step = 0;
};

/// Directional spatial operators, without the time-step factor:
///   x: d_alpha M_alpha + c_beta M_beta   (nx x nx, width dx)
///   y: d_mu    M_mu    + c_nu   M_nu     (ny x ny, width dy)
/// so the semi-discrete system reads u' = -(x-part + y-part) u + s.
struct SpatialOperators {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
};

SpatialOperators assemble_spatial_operators(const ProblemSpec& problem, const GridSpec& grid);

/// Factorization of I + M, Cholesky when it succeeds, partial-pivot LU
/// otherwise.
class ShiftedFactorization {
 public:
  explicit ShiftedFactorization(const Eigen::MatrixXd& m);

  /// Overwrites each column of rhs with (I + M)^{-1} rhs.
  void solve_in_place(Eigen::MatrixXd& rhs) const;
  bool uses_cholesky() const noexcept { return llt_.has_value(); }

 private:
  std::optional<Eigen::LLT<Eigen::MatrixXd>> llt_;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
};

/// Mx = (dt/2)(d_alpha M_alpha + c_beta M_beta), My likewise, with
/// (I + Mx) and (I + My) factorized once for all steps and slices.
class SweepOperators {
 public:
  SweepOperators(double dt, Eigen::MatrixXd mx, Eigen::MatrixXd my);

  double dt() const noexcept { return dt_; }
  const Eigen::MatrixXd& mx() const noexcept { return mx_; }
  const Eigen::MatrixXd& my() const noexcept { return my_; }
  const ShiftedFactorization& x_factor() const noexcept { return x_factor_; }
  const ShiftedFactorization& y_factor() const noexcept { return y_factor_; }

 private:
  double dt_;
  Eigen::MatrixXd mx_;
  Eigen::MatrixXd my_;
  ShiftedFactorization x_factor_;
  ShiftedFactorization y_factor_;
};

/// Validates the problem (ErrorKind::ProblemSpec) and dt, then assembles and
/// factorizes the sweep operators.
SweepOperators build_sweep_operators(const ProblemSpec& problem, const GridSpec& grid, double dt);

/// Peaceman-Rachford stepper. Owns the intermediate u* buffer.
///
///   (I + Mx) u*      = (I - My) u^n + (dt/2) s^{n+1/2}   on every x-line
///   (I + My) u^{n+1} = (I - Mx) u*  + (dt/2) s^{n+1/2}   on every y-line
///
/// Eliminating u* gives the factored Crank-Nicolson form
///   (I + Mx)(I + My) u^{n+1} = (I - Mx)(I - My) u^n + dt s^{n+1/2}.
class PeacemanRachfordStepper {
 public:
  explicit PeacemanRachfordStepper(const SweepOperators& ops);

  /// Advances `state` by one step in place. ErrorKind::Divergence on
  /// non-finite output; ErrorKind::Shape on mismatched sizes.
  void advance(SolutionField& state, const Eigen::MatrixXd& source_half);

 private:
  const SweepOperators& ops_;
  Eigen::MatrixXd intermediate_;
  Eigen::MatrixXd rhs_;
};

SolutionField pr_step(const SolutionField& state, const SweepOperators& ops,
                      const Eigen::MatrixXd& source_half);

/// Dense unknown cap for cn_unsplit_step.
inline constexpr std::size_t kDefaultOracleCapacity = 4096;

/// Unsplit Crank-Nicolson step solved with the Kronecker-assembled 2-D
/// operator. Reference path for small grids; ErrorKind::OracleCapacity when
/// nx * ny exceeds `capacity`.
SolutionField cn_unsplit_step(const SolutionField& state, const ProblemSpec& problem,
                              const GridSpec& grid, double dt,
                              const Eigen::MatrixXd& source_half,
                              std::size_t capacity = kDefaultOracleCapacity);

/// Forward Euler reference step u^{n+1} = u^n - dt (Lx + Ly) u^n + dt s^n.
SolutionField explicit_euler_step(const SolutionField& state, const ProblemSpec& problem,
                                  const GridSpec& grid, double dt,
                                  const Eigen::MatrixXd& source_now);

/// round(t_end / dt), or ErrorKind::Configuration when t_end / dt is not an
/// integer to within 1e-12 relative.
std::size_t step_count(double t_end, double dt);

/// t_end / N with N = max(1, round(t_end / nominal_dt)).
double fitted_time_step(double t_end, double nominal_dt);

struct SolveOptions {
  /// Called after every completed step.
  std::function<void(const SolutionField&)> on_step;
};

/// Samples the initial data and runs round(t_end/dt) Peaceman-Rachford steps.
SolutionField solve(const ProblemSpec& problem, const GridSpec& grid, double dt, double t_end,
                    const SolveOptions& options = {});

/// Spectral radius of (I+My)^{-1}(I-Mx)(I+Mx)^{-1}(I-My) acting on the 2-D
/// field. Mx and My act on different axes, so it is the product of the 1-D
/// radii max|(1 - lambda)/(1 + lambda)| over the eigenvalues of Mx and My.
double pr_iteration_spectral_radius(const SweepOperators& ops, std::size_t capacity = 2048);

}  // namespace rsfade
