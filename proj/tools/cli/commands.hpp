#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsfade/error.hpp"
#include "rsfade/problem.hpp"
#include "run_config.hpp"

namespace rsfade::cli {

/// 2 for usage and config-file errors, 1 for everything else.
int exit_code_for(ErrorKind kind) noexcept;

/// Catalog entry, or a problem JSON file when `cfg.problem` names one, with
/// the --t-end override applied.
ProblemSpec resolve_problem(const RunConfig& cfg);

/// Each returns 0 on success and throws rsfade::Error on failure, except
/// run_verify which returns 1 when a check fails.
int run_solve(const RunConfig& cfg, std::ostream& out);
int run_study(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parses, dispatches, reports errors on
/// `err` and returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsfade::cli
