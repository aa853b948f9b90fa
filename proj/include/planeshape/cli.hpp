#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace planeshape {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,      // bad flags or config document
  exit_numeric = 3,     // convergence, bounds, I/O failure
  exit_violation = 4,   // a checked conclusion failed on data that met its hypotheses
  exit_hypothesis = 5,  // hypotheses of the check not met
};

struct CliOptions {
  std::string builtin;
  std::string config_path;
  std::string input;
  std::optional<double> res;
  std::optional<double> tol;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> lambdas;  // comma separated
  std::string family;
  std::optional<double> perturb;
};

// Each command writes its artifacts under options.out (temp file, then rename)
// plus manifest.json listing them, prints a summary to `log`, and returns an
// ExitCode. Errors are reported on `err`.
int cmd_render_ifs(const CliOptions& options, std::ostream& log, std::ostream& err);
int cmd_classify(const CliOptions& options, std::ostream& log, std::ostream& err);
int cmd_hopf_scan(const CliOptions& options, std::ostream& log, std::ostream& err);
int cmd_conley_continue(const CliOptions& options, std::ostream& log, std::ostream& err);

// "0.01,0.04" -> {0.01, 0.04}. ConfigError when empty or malformed.
std::vector<double> parse_lambda_list(const std::string& text);

}  // namespace planeshape
