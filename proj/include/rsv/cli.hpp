#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsv/error.hpp"
#include "rsv/level1.hpp"

namespace rsv {

struct RunConfig {
  std::string command;
  std::string problem;
  std::string out_dir;  // empty: report on stdout only
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<double> rho;
  std::optional<double> lambda;
  std::optional<double> theta;
  std::optional<int> grid_panels;
  std::optional<int> nodes_per_panel;
  std::optional<std::string> z;
};

/// Problem file plus the settings it and the command line imply.
struct LoadedProblem {
  Level1Problem problem;
  Level1Config config;
  std::optional<int> alpha_index;
  std::optional<double> theta;
  std::optional<int> grid_panels;
  std::vector<Complex> z;
};

/// Throws ConfigError on unknown commands or malformed flags.
RunConfig parse_args(int argc, const char* const* argv);

/// Throws ConfigError when the file is missing or does not match the schema.
LoadedProblem load_problem(const RunConfig& cfg);

/// "re,im;re,im;..."
std::vector<Complex> parse_z_list(const std::string& text);

int exit_code(ErrorCode code);

/// Runs the command, writing the report to `out` (and files under out_dir).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Entry point used by the executable.
int main_entry(int argc, const char* const* argv);

}  // namespace rsv
