#include "rsfade/convergence.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsfade/error.hpp"
#include "rsfade/number_format.hpp"

namespace rsfade {
namespace {

StudyLevel run_level(const ProblemSpec& problem, StudyAxis axis, double level, double fixed_step) {
  const auto start = std::chrono::steady_clock::now();
  const double h = axis == StudyAxis::Space ? level : fixed_step;
  const double nominal_dt = axis == StudyAxis::Space ? fixed_step : level;
  const auto grid = GridSpec::with_spacing(problem.domain, h);
  const double dt = fitted_time_step(problem.t_end, nominal_dt);
  const auto field = solve(problem, grid, dt, problem.t_end);
  const auto norms = error_norms(field, problem.exact, grid);

  StudyLevel out;
  out.nominal_step = level;
  if (axis == StudyAxis::Space) {
    out.step = grid.dx();
    out.divisions = grid.m1();
  } else {
    out.step = dt;
    out.divisions = field.step;
  }
  out.max_error = norms.max_error;
  out.l2_error = norms.l2_error;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

ErrorNorms error_norms(const Eigen::MatrixXd& numeric, const Eigen::MatrixXd& exact,
                       const GridSpec& grid) {
  if (numeric.rows() != exact.rows() || numeric.cols() != exact.cols() ||
      static_cast<std::size_t>(numeric.rows()) != grid.nx() ||
      static_cast<std::size_t>(numeric.cols()) != grid.ny()) {
    throw Error(ErrorKind::Shape, "numeric and exact fields must match the grid interior");
  }
  const Eigen::MatrixXd diff = numeric - exact;
  return {diff.cwiseAbs().maxCoeff(), std::sqrt(grid.dx() * grid.dy()) * diff.norm()};
}

ErrorNorms error_norms(const SolutionField& numeric, const SpaceTimeFunction& exact,
                       const GridSpec& grid) {
  if (!exact) {
    throw Error(ErrorKind::Argument, "error norms need an exact solution");
  }
  const double t = numeric.t;
  return error_norms(numeric.values, grid.sample([&](double x, double y) { return exact(x, y, t); }),
                     grid);
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& steps) {
  if (errors.size() != steps.size()) {
    throw Error(ErrorKind::Argument, "errors and steps must have equal length");
  }
  if (errors.size() < 2) {
    throw Error(ErrorKind::Argument, "at least two levels are needed for a rate");
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(steps[i] > 0.0)) {
      throw Error(ErrorKind::DegenerateRate, "rates need strictly positive errors and steps");
    }
  }
  std::vector<double> rates;
  rates.reserve(errors.size() - 1);
  for (std::size_t m = 0; m + 1 < errors.size(); ++m) {
    if (steps[m] == steps[m + 1]) {
      throw Error(ErrorKind::DegenerateRate, "consecutive steps are equal");
    }
    rates.push_back(std::log(errors[m] / errors[m + 1]) / std::log(steps[m] / steps[m + 1]));
  }
  return rates;
}

std::string_view to_string(StudyAxis axis) noexcept {
  return axis == StudyAxis::Space ? "space" : "time";
}

StudyAxis parse_study_axis(std::string_view text) {
  if (text == "space") return StudyAxis::Space;
  if (text == "time") return StudyAxis::Time;
  throw Error(ErrorKind::Argument, "axis must be 'space' or 'time'");
}

ConvergenceReport refinement_study(const ProblemSpec& problem, StudyAxis axis,
                                   const std::vector<double>& levels, double fixed_step,
                                   const StudyOptions& options) {
  if (levels.empty()) {
    throw Error(ErrorKind::Argument, "a study needs at least one level");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || (i > 0 && !(levels[i] < levels[i - 1]))) {
      throw Error(ErrorKind::Argument, "study levels must be positive and strictly decreasing");
    }
  }
  if (!problem.has_exact()) {
    throw Error(ErrorKind::ProblemSpec, "a refinement study needs an exact solution");
  }
  problem.validate();

  auto annotate = [&](std::size_t index, const Error& e) {
    return Error(e.kind(), "level " + std::to_string(index) + " (step " +
                               format_double(levels[index]) + "): " + e.what());
  };

  ConvergenceReport report;
  report.problem = problem.name;
  report.axis = axis;
  report.fixed_step = fixed_step;
  report.t_end = problem.t_end;
  report.levels.resize(levels.size());

  if (options.parallel && levels.size() > 1) {
    std::vector<std::future<StudyLevel>> pending;
    pending.reserve(levels.size());
    for (const double level : levels) {
      pending.push_back(std::async(std::launch::async, run_level, std::cref(problem), axis, level,
                                   fixed_step));
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
      try {
        report.levels[i] = pending[i].get();
      } catch (const Error& e) {
        for (std::size_t k = i + 1; k < pending.size(); ++k) pending[k].wait();
        throw annotate(i, e);
      }
    }
  } else {
    for (std::size_t i = 0; i < levels.size(); ++i) {
      try {
        report.levels[i] = run_level(problem, axis, levels[i], fixed_step);
      } catch (const Error& e) {
        throw annotate(i, e);
      }
    }
  }

  if (report.levels.size() >= 2) {
    std::vector<double> steps, max_errors, l2_errors;
    for (const auto& level : report.levels) {
      steps.push_back(level.step);
      max_errors.push_back(level.max_error);
      l2_errors.push_back(level.l2_error);
    }
    report.rates = convergence_rates(max_errors, steps);
    report.l2_rates = convergence_rates(l2_errors, steps);
  }
  return report;
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "step,max_error,l2_error,rate\n";
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const auto& level = report.levels[i];
    out << format_double(level.step) << ',' << format_double(level.max_error) << ','
        << format_double(level.l2_error) << ',';
    if (i > 0) out << format_double(report.rates[i - 1]);
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const ConvergenceReport& report, bool include_metadata) {
  nlohmann::ordered_json doc;
  doc["problem"] = report.problem;
  doc["axis"] = std::string(to_string(report.axis));
  doc["fixed_step"] = report.fixed_step;
  doc["t_end"] = report.t_end;
  auto levels = nlohmann::ordered_json::array();
  for (const auto& level : report.levels) {
    nlohmann::ordered_json entry;
    entry["nominal_step"] = level.nominal_step;
    entry["step"] = level.step;
    entry["divisions"] = level.divisions;
    entry["max_error"] = level.max_error;
    entry["l2_error"] = level.l2_error;
    levels.push_back(std::move(entry));
  }
  doc["levels"] = std::move(levels);
  doc["rates"] = report.rates;
  doc["l2_rates"] = report.l2_rates;
  if (include_metadata) {
    auto wall = nlohmann::ordered_json::array();
    for (const auto& level : report.levels) wall.push_back(level.wall_seconds);
    doc["metadata"]["wall_seconds"] = std::move(wall);
  }
  return doc.dump(2) + "\n";
}

std::string report_to_plot_data(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "# log(step) log(max_error)\n";
  for (const auto& level : report.levels) {
    out << format_double(std::log(level.step)) << ' ' << format_double(std::log(level.max_error))
        << '\n';
  }
  return out.str();
}

}  // namespace rsfade
