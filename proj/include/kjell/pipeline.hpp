#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kjell/check.hpp"
#include "kjell/interval_set.hpp"

namespace kjell {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitSolver = 3 };

/// A subcommand needs the output of an earlier one.
class MissingArtifact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run depends on; a run is reproducible from this alone.
struct RunConfig {
  // [set]
  std::string family = "corollary";  ///< kjellberg, corollary, sodin, thick or intervals
  double alpha = 2.0;
  double beta = 4.0;
  double rho = 0.25;
  double p = 0.5;
  int n_min = 0;
  int n_max = 12;
  std::string intervals;  ///< interval file when family = intervals

  // [solver]
  int nodes = 48;
  int max_unknowns = 16000;
  bool refine_crowded = true;

  // [construct]
  std::uint64_t skip = 0;
  bool continuum = false;
  double r_min = 2.0;
  int grid_radii = 40;
  int grid_angles = 25;

  // [analysis]; a zero bound means 1 and the trust radius
  double window_lo = 0.0;
  double window_hi = 0.0;
  int samples = 120;
  std::vector<std::string> checks;  ///< empty runs the default suite

  // [measure]
  std::uint64_t seed = 1;
  std::uint64_t walks = 100000;
  std::vector<double> radii = {25.0, 50.0, 100.0, 200.0};

  // [output]
  std::string out = "kjell_run";
  bool deterministic = false;
};

/// "key = value" lines; "[section]" headers and "#" comments are ignored.
RunConfig read_config(std::istream& is);
RunConfig load_config(const std::string& path);
/// Writes every field so that read_config reproduces the config exactly.
void write_config(std::ostream& os, const RunConfig& cfg);
/// Applies one key = value assignment; throws InvalidSpec on an unknown key or bad value.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Builds the interval set named by the config.
IntervalSet build_set(const RunConfig& cfg);

/// Check targets cmd_check understands, criterion targets included.
std::vector<std::string> check_targets();
/// Default suite run by cmd_check when no target is selected.
std::vector<std::string> default_checks(const RunConfig& cfg);

/// Solves and writes measure.txt, solve_diagnostics.txt and config.txt.
int cmd_solve(const RunConfig& cfg, std::ostream& log);
/// Writes zeros.txt, error_field.csv and construct_summary.txt from measure.txt.
int cmd_construct(const RunConfig& cfg, std::ostream& log);
/// Runs the selected checks, writes check_summary.txt; 0 iff all pass.
int cmd_check(const RunConfig& cfg, std::ostream& log, std::vector<CheckRecord>* records = nullptr);
/// Walk-on-spheres estimates at cfg.radii into wos.csv.
int cmd_measure(const RunConfig& cfg, std::ostream& log);
/// SVG plots, each with its CSV, into the output directory.
int cmd_report(const RunConfig& cfg, std::ostream& log);

}  // namespace kjell
