#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace superdense::cli {

/// Exit statuses of the command line.
enum Status { ok = 0, usage = 1, precondition = 2, budget = 3, failed = 4 };

/// Everything one invocation needs, filled from the command line and
/// validated before any computation starts.
struct RunConfig {
  std::string command;  // "cf", "three-distance", "surface info", ...
  std::string surface_path;
  std::string slope;
  std::string start;  // "a/b+c*alpha" for iet orbit, "j,x,y" for geodesics
  long k = -1;
  std::uint64_t n = 0;
  std::uint64_t steps = 0;
  std::vector<std::uint64_t> m_list;
  double t_max = 0;
  std::vector<double> t_max_list;
  int grid = 64;
  std::uint64_t budget = 0;  // 0: SUPERDENSE_BUDGET or the default
  std::string mode = "exact";
  std::string svg_path;
  std::string csv_path;
  int jobs = 1;
};

/// Parses args (without the program name) into `config`. Returns -1 when
/// the command should run, otherwise the exit status (help prints 0).
int parse(const std::vector<std::string>& args, RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs a parsed configuration; output to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace superdense::cli
