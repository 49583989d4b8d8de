#pragma once

#include "cscforge/grid.hpp"
#include "cscforge/io.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cscforge::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 1,
  kHypothesis = 2,
  kGeometry = 3,
  kVerification = 4,
};

/// Resolved settings of one invocation.  Flags override values read from
/// --config.
struct JobConfig {
  std::optional<std::string> form;      ///< inline JSON or path
  std::optional<std::string> standard;  ///< "case:params"
  std::optional<int> K;
  std::optional<Complex> p0;
  std::optional<double> phi0;
  std::optional<GridSpec> grid;
  double h = 1e-3;
  std::optional<std::string> out;
  double density_scale = 1.0;  ///< hidden diagnostic hook
};

GridSpec parse_grid(const std::string& text);

/// Exit code for a library error.
int exit_code_for(ErrorCode code);

/// Runs the command line `args` (program name excluded).  Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cscforge::cli
