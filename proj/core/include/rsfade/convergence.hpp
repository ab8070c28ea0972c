#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rsfade/adi_solver.hpp"
#include "rsfade/grid.hpp"
#include "rsfade/problem.hpp"

namespace rsfade {

struct ErrorNorms {
  double max_error = 0.0;
  /// sqrt(dx dy sum (U - u)^2) over interior nodes.
  double l2_error = 0.0;
};

/// Compares `numeric` against exact(x, y, numeric.t) on the interior nodes.
ErrorNorms error_norms(const SolutionField& numeric, const SpaceTimeFunction& exact,
                       const GridSpec& grid);

/// Same, against an already sampled exact field.
ErrorNorms error_norms(const Eigen::MatrixXd& numeric, const Eigen::MatrixXd& exact,
                       const GridSpec& grid);

/// rate[m] = log(e_m / e_{m+1}) / log(h_m / h_{m+1}). Requires equal lengths
/// >= 2 and strictly positive entries (ErrorKind::DegenerateRate otherwise).
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& steps);

enum class StudyAxis { Space, Time };

std::string_view to_string(StudyAxis axis) noexcept;
StudyAxis parse_study_axis(std::string_view text);

struct StudyLevel {
  double nominal_step = 0.0;  // as requested
  double step = 0.0;          // actually used (h = L/m, or dt = T/N)
  std::size_t divisions = 0;  // cells per direction, or time steps
  double max_error = 0.0;
  double l2_error = 0.0;
  double wall_seconds = 0.0;
};

struct ConvergenceReport {
  std::string problem;
  StudyAxis axis = StudyAxis::Space;
  double fixed_step = 0.0;  // dt for a space study, h for a time study
  double t_end = 0.0;
  std::vector<StudyLevel> levels;
  std::vector<double> rates;     // from max errors
  std::vector<double> l2_rates;  // from L2 errors
};

struct StudyOptions {
  /// Run levels on separate threads. Results do not depend on this flag.
  bool parallel = false;
};

/// Solves `problem` at every level and estimates rates between consecutive
/// levels. For a space study each level is a cell width h (dx = dy = h) and
/// `fixed_step` the nominal dt; for a time study each level is a nominal dt
/// and `fixed_step` the cell width. Nominal time steps are fitted to
/// t_end / round(t_end / dt). Levels must be positive and strictly
/// decreasing; solver errors are rethrown naming the failing level.
ConvergenceReport refinement_study(const ProblemSpec& problem, StudyAxis axis,
                                   const std::vector<double>& levels, double fixed_step,
                                   const StudyOptions& options = {});

/// CSV with header "step,max_error,l2_error,rate"; the first row's rate is
/// empty.
std::string report_to_csv(const ConvergenceReport& report);

/// Full report as JSON. Wall-clock data goes under "metadata", omitted when
/// `include_metadata` is false so repeated runs compare byte-for-byte.
std::string report_to_json(const ConvergenceReport& report, bool include_metadata = true);

/// Two whitespace-separated columns: log(step) log(max_error).
std::string report_to_plot_data(const ConvergenceReport& report);

}  // namespace rsfade
