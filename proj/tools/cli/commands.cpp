#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsfade/adi_solver.hpp"
#include "rsfade/coefficients.hpp"
#include "rsfade/convergence.hpp"
#include "rsfade/number_format.hpp"
#include "rsfade/riesz_operators.hpp"

namespace rsfade::cli {
namespace {

namespace fs = std::filesystem;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "'");
  }
}

GridSpec make_grid(const RunConfig& cfg, const ProblemSpec& problem) {
  if (cfg.h) return GridSpec::with_spacing(problem.domain, *cfg.h);
  return GridSpec(problem.domain, *cfg.m1, cfg.m2.value_or(*cfg.m1));
}

// ---- verify ----------------------------------------------------------------

struct CheckRow {
  std::string name;
  std::string order;
  bool passed;
  std::string detail;
};

std::string sci(double value) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << value;
  return s.str();
}

CheckRow check_rho(FractionalOrder gamma) {
  const double g = gamma.value();
  const auto rho = rho_coefficients(gamma);
  const bool ok = rho[0] == -g / 24.0 && rho[2] == -g / 24.0 && rho[1] == 1.0 + g / 12.0;
  return {"rho weights", "", ok, ok ? "exact" : "mismatch"};
}

CheckRow check_omega_signs(FractionalOrder gamma) {
  constexpr std::size_t kTerms = 10000;
  const auto set = omega_coefficients(gamma, kTerms);
  bool signs = set.omega[0] > 0.0;
  for (std::size_t k = 1; k <= kTerms; ++k) signs = signs && set.omega[k] <= 0.0;
  double total = 0.0;
  for (std::size_t k = kTerms; k >= 1; --k) total += 2.0 * set.omega[k];
  total += set.omega[0];
  const double bound = 2.0 * std::abs(set.omega[kTerms]) * kTerms / gamma.value();
  const bool ok = signs && std::abs(total) <= bound;
  return {"omega sign and tail", "", ok,
          "sum " + sci(total) + " bound " + sci(bound) + (signs ? "" : ", sign pattern broken")};
}

CheckRow check_partial_sums(FractionalOrder gamma) {
  constexpr std::size_t kTerms = 10000;
  const auto set = omega_coefficients(gamma, kTerms);
  std::vector<double> prefix(kTerms + 1);
  double running = 0.0;
  for (std::size_t k = 0; k <= kTerms; ++k) prefix[k] = running += set.omega[k];
  const double tolerance = 1e-12 * set.omega[0];
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<std::size_t> pick(1, kTerms);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = pick(rng) - 1;
    std::size_t m = pick(rng);
    if (n >= m) std::swap(n, m);
    if (n == m) continue;
    // sum_{k=n-m}^{n} omega_{|k|}
    const double sum = prefix[n] + prefix[m - n] - set.omega[0];
    worst = std::min(worst, sum);
  }
  return {"partial sums positive", "", worst > -tolerance, "min " + sci(worst)};
}

CheckRow check_recurrence(FractionalOrder gamma) {
  const double g = gamma.value();
  const auto set = omega_coefficients(gamma, 20);
  double worst = 0.0;
  for (std::size_t k = 0; k <= 20; ++k) {
    const double kd = static_cast<double>(k);
    const double denominator_arg = g / 2.0 - kd + 1.0;
    double direct = 0.0;
    if (!(denominator_arg <= 0.0 && denominator_arg == std::floor(denominator_arg))) {
      direct = (k % 2 == 0 ? 1.0 : -1.0) * std::tgamma(g + 1.0) /
               (std::tgamma(denominator_arg) * std::tgamma(g / 2.0 + kd + 1.0));
    }
    const double scale = std::max(std::abs(direct), 1e-300);
    const double error = direct == 0.0 ? std::abs(set.omega[k]) : std::abs(set.omega[k] - direct) / scale;
    worst = std::max(worst, error);
  }
  return {"recurrence vs gamma formula", "", worst <= 1e-12, "max rel " + sci(worst)};
}

// K runs over multiples of 32 so that K z is a multiple of 2 pi at every
// sample point; the leading tail term then keeps its phase as K doubles.
CheckRow check_generating_function(FractionalOrder gamma) {
  bool monotone = true;
  double final_error = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double z = 2.0 * std::numbers::pi * (i + 0.5) / 16.0;
    const double exact = std::pow(std::abs(2.0 * std::sin(z / 2.0)), gamma.value());
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t terms = 1280; terms <= 10240; terms *= 2) {
      const double error = std::abs(generating_function(gamma, z, terms) - exact);
      if (error > previous + 1e-14) monotone = false;
      previous = error;
    }
    final_error = std::max(final_error, previous);
  }
  return {"generating function", "", monotone,
          "max error at K=10240 " + sci(final_error) + (monotone ? "" : ", not monotone")};
}

CheckRow check_toeplitz(FractionalOrder gamma, std::size_t n) {
  const auto rho = rho_coefficients(gamma);
  const auto pairs = tridiag_toeplitz_eigenpairs(rho[0], rho[1], rho[2], n);
  std::vector<double> analytic;
  for (const auto& pair : pairs) analytic.push_back(pair.value);
  std::sort(analytic.begin(), analytic.end());
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(assemble_A(gamma, n), Eigen::EigenvaluesOnly);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, std::abs(analytic[j] - solver.eigenvalues()[static_cast<Eigen::Index>(j)]));
  }
  return {"tridiagonal eigenvalues", "", worst <= 1e-10, "max diff " + sci(worst)};
}

CheckRow check_symmetry(const RieszMatrix& m) {
  const double asym = relative_asymmetry(m.matrix());
  return {"operator symmetric", "", asym <= 1e-12, "relative " + sci(asym)};
}

CheckRow check_spd(const RieszMatrix& m) {
  const auto cert = certify_spd(m.matrix(), SpdProbe::Eigensolver);
  return {"operator SPD", "", cert.is_spd, "min eigenvalue " + sci(cert.min_eigenvalue)};
}

CheckRow check_radius(const RieszMatrix& m) {
  double worst = 0.0;
  for (const double dt : {1e-3, 1e-1, 1.0, 10.0}) {
    const MatrixXd half = (0.5 * dt) * m.matrix();
    worst = std::max(worst, pr_iteration_spectral_radius(SweepOperators(dt, half, half)));
  }
  return {"PR spectral radius < 1", "", worst < 1.0, "max over dt " + format_double(worst)};
}

// Interior (x in [1/4, 3/4]) error of -M u against the closed-form Riesz
// derivative, over h = 1/16 .. 1/128.
CheckRow check_operator_order(FractionalOrder gamma) {
  const double g = gamma.value();
  std::vector<double> errors, steps;
  for (std::size_t cells = 16; cells <= 128; cells *= 2) {
    const double h = 1.0 / static_cast<double>(cells);
    const auto n = cells - 1;
    VectorXd u(static_cast<Eigen::Index>(n));
    VectorXd exact(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1) * h;
      if (g == 2.0) {
        u[static_cast<Eigen::Index>(i)] = std::sin(std::numbers::pi * x);
        exact[static_cast<Eigen::Index>(i)] = -std::numbers::pi * std::numbers::pi * u[static_cast<Eigen::Index>(i)];
      } else {
        u[static_cast<Eigen::Index>(i)] = x * x * (1.0 - x) * (1.0 - x);
        exact[static_cast<Eigen::Index>(i)] = riesz_derivative_poly1(g, x);
      }
    }
    const VectorXd approx = -(assemble_riesz_matrix(gamma, n, h).matrix() * u);
    double worst = 0.0;
    for (std::size_t i = cells / 4 - 1; i < 3 * cells / 4; ++i) {
      worst = std::max(worst, std::abs(approx[static_cast<Eigen::Index>(i)] - exact[static_cast<Eigen::Index>(i)]));
    }
    errors.push_back(worst);
    steps.push_back(h);
  }
  const auto rates = convergence_rates(errors, steps);
  bool ok = true;
  std::string detail = "slopes";
  for (const double rate : rates) {
    ok = ok && std::abs(rate - 4.0) <= 0.2;
    detail += " " + format_double(std::round(rate * 1000.0) / 1000.0);
  }
  return {"operator fourth order", "", ok, detail};
}

template <typename Check>
CheckRow guarded(const std::string& name, Check&& check) {
  try {
    return check();
  } catch (const std::exception& e) {
    return {name, "", false, e.what()};
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  return kind == ErrorKind::Usage || kind == ErrorKind::Parse ? 2 : 1;
}

ProblemSpec resolve_problem(const RunConfig& cfg) {
  std::error_code ec;
  const fs::path path(cfg.problem);
  ProblemSpec problem = fs::is_regular_file(path, ec) ? load_problem_config(path)
                                                       : make_problem(cfg.problem);
  if (cfg.t_end) problem.t_end = *cfg.t_end;
  return problem;
}

int run_solve(const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto problem = resolve_problem(cfg);
  const auto grid = make_grid(cfg, problem);
  const double dt = fitted_time_step(problem.t_end, *cfg.dt);

  std::ostringstream checkpoints;
  SolveOptions options;
  if (cfg.verbose) {
    checkpoints << "step,t,max_abs_u\n";
    options.on_step = [&](const SolutionField& state) {
      checkpoints << state.step << ',' << format_double(state.t) << ','
                  << format_double(state.values.cwiseAbs().maxCoeff()) << '\n';
    };
  }
  const auto field = solve(problem, grid, dt, problem.t_end, options);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  MatrixXd exact;
  if (problem.has_exact()) {
    exact = grid.sample([&](double x, double y) { return problem.exact(x, y, field.t); });
  }

  std::ostringstream csv;
  csv << (problem.has_exact() ? "x,y,u,exact,abs_error\n" : "x,y,u\n");
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(j);
      const double u = field.values(r, c);
      csv << format_double(grid.x(i + 1)) << ',' << format_double(grid.y(j + 1)) << ','
          << format_double(u);
      if (problem.has_exact()) {
        csv << ',' << format_double(exact(r, c)) << ',' << format_double(std::abs(u - exact(r, c)));
      }
      csv << '\n';
    }
  }

  nlohmann::ordered_json summary;
  summary["problem"] = problem.name;
  summary["m1"] = grid.m1();
  summary["m2"] = grid.m2();
  summary["dx"] = grid.dx();
  summary["dy"] = grid.dy();
  summary["nominal_dt"] = *cfg.dt;
  summary["dt"] = dt;
  summary["steps"] = field.step;
  summary["t_end"] = field.t;
  summary["max_abs_u"] = field.values.size() ? field.values.cwiseAbs().maxCoeff() : 0.0;
  if (problem.has_exact()) {
    const auto norms = error_norms(field.values, exact, grid);
    summary["max_error"] = norms.max_error;
    summary["l2_error"] = norms.l2_error;
  } else {
    summary["max_error"] = nullptr;
    summary["l2_error"] = nullptr;
  }
  if (!cfg.compare) summary["metadata"]["wall_seconds"] = wall;

  ensure_directory(cfg.out_dir);
  const auto stem = problem.name + "_solve";
  write_file_atomic(cfg.out_dir / (stem + "_field.csv"), csv.str());
  write_file_atomic(cfg.out_dir / (stem + "_summary.json"), summary.dump(2) + "\n");
  if (cfg.verbose) write_file_atomic(cfg.out_dir / (stem + "_checkpoints.csv"), checkpoints.str());

  out << problem.name << ": " << grid.m1() << "x" << grid.m2() << " cells, " << field.step
      << " steps of dt=" << format_double(dt);
  if (problem.has_exact()) {
    out << ", max error " << format_double(summary["max_error"].get<double>());
  }
  out << '\n';
  return 0;
}

int run_study(const RunConfig& cfg, std::ostream& out) {
  const auto problem = resolve_problem(cfg);
  double fixed_step = 0.0;
  if (cfg.axis == StudyAxis::Space) {
    fixed_step = *cfg.dt;
  } else {
    fixed_step = cfg.h.value_or(0.02 * problem.domain.width());
  }
  StudyOptions options;
  options.parallel = cfg.parallel;
  const auto report = refinement_study(problem, cfg.axis, cfg.levels, fixed_step, options);

  ensure_directory(cfg.out_dir);
  const auto stem = problem.name + "_" + std::string(to_string(cfg.axis)) + "_study";
  const auto csv = report_to_csv(report);
  write_file_atomic(cfg.out_dir / (stem + ".csv"), csv);
  write_file_atomic(cfg.out_dir / (stem + ".json"), report_to_json(report, !cfg.compare));
  write_file_atomic(cfg.out_dir / (stem + ".dat"), report_to_plot_data(report));
  out << csv;
  return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<double> orders = {0.5, 0.7, 0.9, 1.2, 1.6, 1.8, 2.0};
  if (cfg.gamma) orders = {*cfg.gamma};
  const std::size_t n = cfg.n.value_or(16);
  const double h = 1.0 / static_cast<double>(n + 1);

  std::vector<CheckRow> rows;
  for (const double value : orders) {
    const auto label = format_double(value);
    std::optional<FractionalOrder> gamma;
    try {
      gamma.emplace(value);
    } catch (const std::exception& e) {
      rows.push_back({"fractional order", label, false, e.what()});
      continue;
    }
    std::vector<CheckRow> group;
    group.push_back(guarded("rho weights", [&] { return check_rho(*gamma); }));
    group.push_back(guarded("omega sign and tail", [&] { return check_omega_signs(*gamma); }));
    group.push_back(guarded("partial sums positive", [&] { return check_partial_sums(*gamma); }));
    group.push_back(guarded("recurrence vs gamma formula", [&] { return check_recurrence(*gamma); }));
    group.push_back(guarded("generating function", [&] { return check_generating_function(*gamma); }));
    group.push_back(guarded("tridiagonal eigenvalues", [&] { return check_toeplitz(*gamma, n); }));
    std::optional<RieszMatrix> matrix;
    try {
      matrix.emplace(assemble_riesz_matrix(*gamma, n, h));
      group.push_back(check_symmetry(*matrix));
      group.push_back(guarded("operator SPD", [&] { return check_spd(*matrix); }));
      group.push_back(guarded("PR spectral radius < 1", [&] { return check_radius(*matrix); }));
    } catch (const std::exception& e) {
      group.push_back({"operator assembly", "", false, e.what()});
    }
    group.push_back(guarded("operator fourth order", [&] { return check_operator_order(*gamma); }));
    for (auto& row : group) {
      row.order = label;
      rows.push_back(std::move(row));
    }
  }

  std::size_t failures = 0;
  out << std::left << std::setw(30) << "check" << std::setw(8) << "gamma" << std::setw(8)
      << "result" << "detail\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(30) << row.name << std::setw(8) << row.order << std::setw(8)
        << (row.passed ? "PASS" : "FAIL") << row.detail << '\n';
    if (!row.passed) {
      ++failures;
      err << "check failed: " << row.name << " (gamma " << row.order << "): " << row.detail << '\n';
    }
  }
  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
      << " (n = " << n << ")\n";
  return failures == 0 ? 0 : 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_config(args, out);
    if (!cfg) return 0;
    switch (cfg->command) {
      case Command::Solve: return run_solve(*cfg, out);
      case Command::Study: return run_study(*cfg, out);
      case Command::Verify: return run_verify(*cfg, out, err);
    }
    return 1;
  } catch (const Error& e) {
    err << "rsfade: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "rsfade: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rsfade::cli
