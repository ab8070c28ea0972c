#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rsfade/error.hpp"

namespace rsfade::cli {
namespace {

using nlohmann::json;

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::Usage, message); }

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Line of the first occurrence of "key" in the text, 0 when not found.
std::size_t line_of_key(std::string_view text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

[[noreturn]] void bad_key(std::string_view text, const std::string& key, const std::string& what) {
  const auto line = line_of_key(text, key);
  throw Error(ErrorKind::Parse, "run config line " + std::to_string(line) + ": key \"" + key +
                                    "\" " + what);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    usage("'" + std::string(text) + "' is not a number");
  }
  return value;
}

double step_value(std::string_view text, const json& value, const std::string& key) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    try {
      return parse_step_literal(value.get<std::string>());
    } catch (const Error&) {
    }
  }
  bad_key(text, key, "must be a number or a step literal such as \"0.05pi\"");
}

std::size_t count_value(std::string_view text, const json& value, const std::string& key) {
  if (!value.is_number_unsigned()) bad_key(text, key, "must be a non-negative integer");
  return value.get<std::size_t>();
}

bool bool_value(std::string_view text, const json& value, const std::string& key) {
  if (!value.is_boolean()) bad_key(text, key, "must be true or false");
  return value.get<bool>();
}

std::string string_value(std::string_view text, const json& value, const std::string& key) {
  if (!value.is_string()) bad_key(text, key, "must be a string");
  return value.get<std::string>();
}

std::size_t parse_count(const std::string& flag, const std::string& text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    usage(flag + " expects a positive integer, got '" + text + "'");
  }
  return value;
}

void require_decreasing(const std::vector<double>& levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0)) usage("study levels must be positive");
    if (i > 0 && !(levels[i] < levels[i - 1])) usage("study levels must be strictly decreasing");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Raw flag values as typed on the command line; empty when absent.
struct FlagValues {
  std::string config, problem, h, m1, m2, dt, t_end, axis, levels, gamma, n, out;
  bool verbose = false;
  bool compare = false;
  bool parallel = false;
};

}  // namespace

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::Solve: return "solve";
    case Command::Study: return "study";
    case Command::Verify: return "verify";
  }
  return "?";
}

double parse_step_literal(std::string_view text) {
  if (text.empty()) usage("empty step value");
  double factor = 1.0;
  for (std::string_view suffix : {std::string_view("pi"), std::string_view("\xcf\x80")}) {
    if (text.size() >= suffix.size() && text.substr(text.size() - suffix.size()) == suffix) {
      factor = std::numbers::pi;
      text.remove_suffix(suffix.size());
      break;
    }
  }
  if (text.empty() && factor != 1.0) return factor;
  if (!text.empty() && text.back() == '*') text.remove_suffix(1);
  const double value = parse_number(text) * factor;
  if (!(value > 0.0) || !std::isfinite(value)) {
    usage("step '" + std::string(text) + "' must be positive and finite");
  }
  return value;
}

std::vector<double> parse_step_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    auto item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.push_back(parse_step_literal(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "run config line " +
                                      std::to_string(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                      ": " + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::Parse, "run config line 1: top level must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "problem") {
      cfg.problem = string_value(text, value, key);
    } else if (key == "h") {
      cfg.h = step_value(text, value, key);
    } else if (key == "m1") {
      cfg.m1 = count_value(text, value, key);
    } else if (key == "m2") {
      cfg.m2 = count_value(text, value, key);
    } else if (key == "dt") {
      cfg.dt = step_value(text, value, key);
    } else if (key == "t_end") {
      cfg.t_end = step_value(text, value, key);
    } else if (key == "axis") {
      try {
        cfg.axis = parse_study_axis(string_value(text, value, key));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        bad_key(text, key, "must be \"space\" or \"time\"");
      }
    } else if (key == "levels") {
      cfg.levels.clear();
      if (value.is_string()) {
        try {
          cfg.levels = parse_step_list(value.get<std::string>());
        } catch (const Error&) {
          bad_key(text, key, "is not a list of step literals");
        }
      } else if (value.is_array()) {
        for (const auto& item : value) cfg.levels.push_back(step_value(text, item, key));
      } else {
        bad_key(text, key, "must be an array or a comma-separated string");
      }
    } else if (key == "parallel") {
      cfg.parallel = bool_value(text, value, key);
    } else if (key == "gamma") {
      if (!value.is_number()) bad_key(text, key, "must be a number");
      cfg.gamma = value.get<double>();
    } else if (key == "n") {
      cfg.n = count_value(text, value, key);
    } else if (key == "out") {
      cfg.out_dir = string_value(text, value, key);
    } else if (key == "verbose") {
      cfg.verbose = bool_value(text, value, key);
    } else if (key == "compare") {
      cfg.compare = bool_value(text, value, key);
    } else {
      bad_key(text, key, "is not a recognized setting");
    }
  }
}

std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Riesz space-fractional advection-dispersion solver"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  FlagValues flags;

  auto* solve = app.add_subcommand("solve", "Run one solve and write the final field");
  auto* study = app.add_subcommand("study", "Run a refinement study");
  auto* verify = app.add_subcommand("verify", "Run the operator and coefficient checks");

  for (auto* sub : {solve, study}) {
    sub->add_option("--config", flags.config, "JSON run file; flags override its values");
    sub->add_option("--problem", flags.problem, "Catalog name or problem JSON file");
    sub->add_option("--h", flags.h, "Cell width in both directions (accepts 0.05pi)");
    sub->add_option("--dt", flags.dt, "Time step (accepts pi suffix)");
    sub->add_option("--t-end", flags.t_end, "Override the problem end time");
    sub->add_option("--out", flags.out,
                    std::string("Output directory (default $") + kOutputDirEnv + " or .)");
    sub->add_flag("--compare", flags.compare, "Omit wall-clock metadata from outputs");
  }
  solve->add_option("--m1", flags.m1, "Cells along x");
  solve->add_option("--m2", flags.m2, "Cells along y (defaults to m1)");
  solve->add_flag("--verbose", flags.verbose, "Also write a per-step checkpoint CSV");
  study->add_option("--axis", flags.axis, "space or time");
  study->add_option("--levels", flags.levels, "Comma-separated decreasing steps");
  study->add_flag("--parallel", flags.parallel, "Run levels concurrently");
  study->add_option("--m1", flags.m1, "Not accepted for studies");
  verify->add_option("--config", flags.config, "JSON run file");
  verify->add_option("--gamma", flags.gamma, "Check a single fractional order");
  verify->add_option("--n", flags.n, "Interior size for the matrix checks");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  RunConfig cfg;
  if (solve->parsed()) cfg.command = Command::Solve;
  if (study->parsed()) cfg.command = Command::Study;
  if (verify->parsed()) cfg.command = Command::Verify;

  bool out_from_file = false;
  if (!flags.config.empty()) {
    cfg.out_dir.clear();
    apply_config_text(cfg, read_file(flags.config));
    out_from_file = !cfg.out_dir.empty();
    if (!out_from_file) cfg.out_dir = ".";
  }

  if (!flags.problem.empty()) cfg.problem = flags.problem;
  if (!flags.h.empty()) cfg.h = parse_step_literal(flags.h);
  if (!flags.m1.empty()) cfg.m1 = parse_count("--m1", flags.m1);
  if (!flags.m2.empty()) cfg.m2 = parse_count("--m2", flags.m2);
  if (!flags.dt.empty()) cfg.dt = parse_step_literal(flags.dt);
  if (!flags.t_end.empty()) cfg.t_end = parse_step_literal(flags.t_end);
  if (!flags.axis.empty()) {
    try {
      cfg.axis = parse_study_axis(flags.axis);
    } catch (const Error& e) {
      usage(e.what());
    }
  }
  if (!flags.levels.empty()) cfg.levels = parse_step_list(flags.levels);
  if (!flags.gamma.empty()) cfg.gamma = parse_number(flags.gamma);
  if (!flags.n.empty()) cfg.n = parse_count("--n", flags.n);
  if (flags.verbose) cfg.verbose = true;
  if (flags.compare) cfg.compare = true;
  if (flags.parallel) cfg.parallel = true;
  if (!flags.out.empty()) {
    cfg.out_dir = flags.out;
  } else if (!out_from_file) {
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
      cfg.out_dir = env;
    }
  }

  switch (cfg.command) {
    case Command::Solve:
      if (cfg.problem.empty()) usage("solve needs --problem");
      if (cfg.h && (cfg.m1 || cfg.m2)) usage("--h conflicts with --m1/--m2");
      if (!cfg.h && !cfg.m1) usage("solve needs --h or --m1");
      if (!cfg.h && cfg.m2 && !cfg.m1) usage("--m2 needs --m1");
      if ((cfg.m1 && *cfg.m1 < 2) || (cfg.m2 && *cfg.m2 < 2)) usage("cell counts must be >= 2");
      if (!cfg.dt) usage("solve needs --dt");
      break;
    case Command::Study:
      if (cfg.problem.empty()) usage("study needs --problem");
      if (cfg.m1 || cfg.m2) usage("studies take --h, not --m1/--m2");
      if (cfg.levels.empty()) usage("study needs --levels");
      require_decreasing(cfg.levels);
      if (cfg.axis == StudyAxis::Space) {
        if (cfg.h) usage("a space study refines h; give the fixed time step with --dt");
        if (!cfg.dt) usage("a space study needs --dt");
      } else if (cfg.dt) {
        usage("a time study refines dt; give the fixed cell width with --h");
      }
      break;
    case Command::Verify:
      if (cfg.n && *cfg.n < 1) usage("--n must be >= 1");
      break;
  }
  return cfg;
}

}  // namespace rsfade::cli
