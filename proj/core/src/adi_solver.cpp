#include "rsfade/adi_solver.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "rsfade/error.hpp"
#include "rsfade/riesz_operators.hpp"

namespace rsfade {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;

void require_time_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::Argument, "time step must be positive and finite");
  }
}

void require_field_shape(const MatrixXd& field, const GridSpec& grid, const char* what) {
  if (static_cast<std::size_t>(field.rows()) != grid.nx() ||
      static_cast<std::size_t>(field.cols()) != grid.ny()) {
    throw Error(ErrorKind::Shape, std::string(what) + " is " + std::to_string(field.rows()) +
                                      "x" + std::to_string(field.cols()) + ", grid interior is " +
                                      std::to_string(grid.nx()) + "x" + std::to_string(grid.ny()));
  }
}

void require_finite(const MatrixXd& values, std::size_t step) {
  if (!values.allFinite()) {
    throw Error(ErrorKind::Divergence,
                "non-finite values after step " + std::to_string(step));
  }
}

// weight * M_gamma, skipped entirely for a zero weight.
void accumulate(MatrixXd& target, double weight, FractionalOrder gamma, std::size_t n, double h) {
  if (weight == 0.0) return;
  target.noalias() += weight * assemble_riesz_matrix(gamma, n, h).matrix();
}

}  // namespace

SpatialOperators assemble_spatial_operators(const ProblemSpec& problem, const GridSpec& grid) {
  problem.validate();
  const auto nx = grid.nx();
  const auto ny = grid.ny();
  SpatialOperators ops{MatrixXd::Zero(static_cast<Index>(nx), static_cast<Index>(nx)),
                       MatrixXd::Zero(static_cast<Index>(ny), static_cast<Index>(ny))};
  accumulate(ops.x, problem.d_alpha, problem.alpha, nx, grid.dx());
  accumulate(ops.x, problem.c_beta, problem.beta, nx, grid.dx());
  accumulate(ops.y, problem.d_mu, problem.mu, ny, grid.dy());
  accumulate(ops.y, problem.c_nu, problem.nu, ny, grid.dy());
  return ops;
}

ShiftedFactorization::ShiftedFactorization(const MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::Shape, "cannot factorize a non-square operator");
  }
  const MatrixXd shifted = MatrixXd::Identity(m.rows(), m.cols()) + m;
  Eigen::LLT<MatrixXd> llt(shifted);
  if (llt.info() == Eigen::Success) {
    llt_.emplace(std::move(llt));
    return;
  }
  Eigen::PartialPivLU<MatrixXd> lu(shifted);
  const auto& diag = lu.matrixLU().diagonal();
  if (!diag.allFinite() || (diag.array() == 0.0).any()) {
    throw Error(ErrorKind::Singularity, "I + M is singular");
  }
  lu_.emplace(std::move(lu));
}

void ShiftedFactorization::solve_in_place(MatrixXd& rhs) const {
  if (llt_) {
    llt_->solveInPlace(rhs);
  } else {
    rhs = lu_->solve(rhs);
  }
}

SweepOperators::SweepOperators(double dt, MatrixXd mx, MatrixXd my)
    : dt_(dt),
      mx_(std::move(mx)),
      my_(std::move(my)),
      x_factor_(mx_),
      y_factor_(my_) {}

SweepOperators build_sweep_operators(const ProblemSpec& problem, const GridSpec& grid, double dt) {
  require_time_step(dt);
  auto spatial = assemble_spatial_operators(problem, grid);
  return SweepOperators(dt, (0.5 * dt) * spatial.x, (0.5 * dt) * spatial.y);
}

PeacemanRachfordStepper::PeacemanRachfordStepper(const SweepOperators& ops) : ops_(ops) {}

void PeacemanRachfordStepper::advance(SolutionField& state, const MatrixXd& source_half) {
  const auto& mx = ops_.mx();
  const auto& my = ops_.my();
  auto& u = state.values;
  if (u.rows() != mx.rows() || u.cols() != my.rows() || source_half.rows() != u.rows() ||
      source_half.cols() != u.cols()) {
    throw Error(ErrorKind::Shape, "field, source and sweep operators disagree in size");
  }
  const double half_dt = 0.5 * ops_.dt();

  // Step 1: x-implicit on every fixed-y column.
  intermediate_ = u;
  intermediate_.noalias() -= u * my.transpose();
  intermediate_ += half_dt * source_half;
  ops_.x_factor().solve_in_place(intermediate_);

  // Step 2: y-implicit on every fixed-x row, solved on the transpose.
  rhs_ = intermediate_;
  rhs_.noalias() -= mx * intermediate_;
  rhs_ += half_dt * source_half;
  MatrixXd rows = rhs_.transpose();
  ops_.y_factor().solve_in_place(rows);
  u = rows.transpose();

  state.step += 1;
  state.t += ops_.dt();
  require_finite(u, state.step);
}

SolutionField pr_step(const SolutionField& state, const SweepOperators& ops,
                      const MatrixXd& source_half) {
  SolutionField next = state;
  PeacemanRachfordStepper stepper(ops);
  stepper.advance(next, source_half);
  return next;
}

SolutionField cn_unsplit_step(const SolutionField& state, const ProblemSpec& problem,
                              const GridSpec& grid, double dt, const MatrixXd& source_half,
                              std::size_t capacity) {
  require_time_step(dt);
  require_field_shape(state.values, grid, "state");
  require_field_shape(source_half, grid, "source");
  const auto unknowns = grid.nx() * grid.ny();
  if (unknowns > capacity) {
    throw Error(ErrorKind::OracleCapacity, std::to_string(unknowns) +
                                               " unknowns exceed the dense oracle cap of " +
                                               std::to_string(capacity));
  }
  const auto spatial = assemble_spatial_operators(problem, grid);
  const auto nx = static_cast<Index>(grid.nx());
  const auto ny = static_cast<Index>(grid.ny());
  // Column-major vec(U): x varies fastest.
  const MatrixXd operator_2d =
      MatrixXd(Eigen::kroneckerProduct(MatrixXd::Identity(ny, ny), spatial.x)) +
      MatrixXd(Eigen::kroneckerProduct(spatial.y, MatrixXd::Identity(nx, nx)));
  const auto size = nx * ny;
  const MatrixXd identity = MatrixXd::Identity(size, size);
  const MatrixXd lhs = identity + (0.5 * dt) * operator_2d;
  const Eigen::Map<const Eigen::VectorXd> u0(state.values.data(), size);
  const Eigen::Map<const Eigen::VectorXd> s(source_half.data(), size);
  const Eigen::VectorXd rhs = u0 - (0.5 * dt) * (operator_2d * u0) + dt * s;
  const Eigen::VectorXd u1 = lhs.partialPivLu().solve(rhs);

  SolutionField next{Eigen::Map<const MatrixXd>(u1.data(), nx, ny), state.t + dt, state.step + 1};
  require_finite(next.values, next.step);
  return next;
}

SolutionField explicit_euler_step(const SolutionField& state, const ProblemSpec& problem,
                                  const GridSpec& grid, double dt, const MatrixXd& source_now) {
  require_time_step(dt);
  require_field_shape(state.values, grid, "state");
  require_field_shape(source_now, grid, "source");
  const auto spatial = assemble_spatial_operators(problem, grid);
  const auto& u = state.values;
  SolutionField next{u - dt * (apply_along_x(spatial.x, u) + apply_along_y(spatial.y, u)) +
                         dt * source_now,
                     state.t + dt, state.step + 1};
  require_finite(next.values, next.step);
  return next;
}

std::size_t step_count(double t_end, double dt) {
  require_time_step(dt);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::Configuration, "t_end must be positive and finite");
  }
  const double ratio = t_end / dt;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(ratio - steps) > 1e-12 * steps) {
    throw Error(ErrorKind::Configuration, "t_end / dt = " + std::to_string(ratio) +
                                              " is not a whole number of steps");
  }
  return static_cast<std::size_t>(steps);
}

double fitted_time_step(double t_end, double nominal_dt) {
  require_time_step(nominal_dt);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::Configuration, "t_end must be positive and finite");
  }
  const double steps = std::max(1.0, std::round(t_end / nominal_dt));
  return t_end / steps;
}

SolutionField solve(const ProblemSpec& problem, const GridSpec& grid, double dt, double t_end,
                    const SolveOptions& options) {
  const auto steps = step_count(t_end, dt);
  const auto ops = build_sweep_operators(problem, grid, dt);

  SolutionField state{grid.sample(problem.initial), 0.0, 0};
  require_finite(state.values, 0);

  auto sample_source = [&](double t) {
    return grid.sample([&](double x, double y) { return problem.source(x, y, t); });
  };

  PeacemanRachfordStepper stepper(ops);
  MatrixXd source_now = sample_source(0.0);
  MatrixXd source_next;
  MatrixXd source_half;
  for (std::size_t n = 0; n < steps; ++n) {
    const double t_next = n + 1 == steps ? t_end : static_cast<double>(n + 1) * dt;
    source_next = sample_source(t_next);
    source_half = 0.5 * (source_now + source_next);
    stepper.advance(state, source_half);
    state.t = t_next;
    if (options.on_step) options.on_step(state);
    std::swap(source_now, source_next);
  }
  return state;
}

double pr_iteration_spectral_radius(const SweepOperators& ops, std::size_t capacity) {
  const auto largest = static_cast<std::size_t>(std::max(ops.mx().rows(), ops.my().rows()));
  if (largest > capacity) {
    throw Error(ErrorKind::OracleCapacity,
                "spectral radius needs a dense eigensolve of size " + std::to_string(largest));
  }
  auto radius_1d = [](const MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(0.5 * (m + m.transpose()),
                                                   Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorKind::Singularity, "eigensolver did not converge");
    }
    double radius = 0.0;
    for (const double lambda : solver.eigenvalues()) {
      radius = std::max(radius, std::abs((1.0 - lambda) / (1.0 + lambda)));
    }
    return radius;
  };
  return radius_1d(ops.mx()) * radius_1d(ops.my());
}

}  // namespace rsfade
