#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsfade/convergence.hpp"

namespace rsfade::cli {

enum class Command { Solve, Study, Verify };

std::string_view to_string(Command command) noexcept;

/// Environment variable naming the output directory when --out is absent.
inline constexpr const char* kOutputDirEnv = "RSFADE_OUTPUT_DIR";

struct RunConfig {
  Command command = Command::Solve;
  std::string problem;  // catalog name or path to a problem JSON file

  std::optional<double> h;
  std::optional<std::size_t> m1;
  std::optional<std::size_t> m2;
  std::optional<double> dt;
  std::optional<double> t_end;

  StudyAxis axis = StudyAxis::Space;
  std::vector<double> levels;
  bool parallel = false;

  std::optional<double> gamma;  // verify: single order instead of the sample set
  std::optional<std::size_t> n;

  std::filesystem::path out_dir = ".";
  bool verbose = false;
  bool compare = false;  // omit wall-clock metadata so outputs diff cleanly
};

/// Parses a step literal: a decimal number, optionally followed by "pi"
/// (0.05pi == 0.05 * pi; a bare "pi" is pi). ErrorKind::Usage otherwise.
double parse_step_literal(std::string_view text);

/// Comma-separated step literals.
std::vector<double> parse_step_list(std::string_view text);

/// Builds a RunConfig from command-line arguments (args[0] is the program
/// name). Values from --config FILE are applied first and overridden by
/// flags. Usage mistakes raise ErrorKind::Usage, a malformed config file
/// ErrorKind::Parse naming the line. Returns std::nullopt after printing
/// help.
std::optional<RunConfig> parse_config(const std::vector<std::string>& args,
                                      std::ostream& out);

/// Applies a flat JSON run file to `cfg`. Keys mirror the long flag names
/// with '-' replaced by '_'; unknown keys are rejected.
void apply_config_text(RunConfig& cfg, std::string_view json_text);

}  // namespace rsfade::cli
