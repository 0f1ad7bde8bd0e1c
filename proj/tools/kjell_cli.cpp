#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "kjell/errors.hpp"
#include "kjell/pipeline.hpp"

using namespace kjell;

namespace {

// Command-line values kept as text and applied on top of the config file.
struct Overrides {
  std::string config;
  std::vector<std::pair<std::string, std::string>> values;
  std::string n_range;
  std::vector<std::string> only;
  bool deterministic = false;
  bool continuum = false;
  bool list = false;
};

void bind(CLI::App* app, Overrides& o, const std::string& flag, const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&o, key](const std::string& v) { o.values.emplace_back(key, v); }, help);
}

void common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "key = value config file");
  bind(app, o, "--out", "out", "output directory");
  bind(app, o, "--family", "family", "kjellberg, corollary, sodin, thick or intervals");
  bind(app, o, "--alpha", "alpha", "Kjellberg slit ratio");
  bind(app, o, "--beta", "beta", "Kjellberg period");
  bind(app, o, "--rho", "rho", "Corollary order parameter");
  bind(app, o, "--p", "p", "thick-set exponent");
  app->add_option("--n", o.n_range, "index range a..b, or the largest index");
  app->add_option_function<std::string>(
      "--intervals",
      [&o](const std::string& v) {
        o.values.emplace_back("family", "intervals");
        o.values.emplace_back("intervals", v);
      },
      "explicit interval file");
  bind(app, o, "--nodes", "nodes", "Chebyshev nodes per interval");
  bind(app, o, "--max-unknowns", "max_unknowns", "ceiling on the number of unknowns");
  bind(app, o, "--seed", "seed", "random seed");
  bind(app, o, "--window-lo", "window_lo", "analysis window start");
  bind(app, o, "--window-hi", "window_hi", "analysis window end");
  bind(app, o, "--samples", "samples", "radii per report curve");
  app->add_flag("--deterministic", o.deterministic, "serial reductions for byte-identical output");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  for (const auto& [k, v] : o.values) set_config_value(cfg, k, v);
  if (!o.n_range.empty()) {
    const auto dots = o.n_range.find("..");
    if (dots == std::string::npos) {
      set_config_value(cfg, "n_max", o.n_range);
    } else {
      set_config_value(cfg, "n_min", o.n_range.substr(0, dots));
      set_config_value(cfg, "n_max", o.n_range.substr(dots + 2));
    }
  }
  if (o.deterministic) cfg.deterministic = true;
  if (o.continuum) cfg.continuum = true;
  if (!o.only.empty()) cfg.checks = o.only;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive harmonic functions on slit planes, entire functions built from them, and growth checks"};
  app.require_subcommand(1);
  Overrides o;

  auto* solve = app.add_subcommand("solve", "solve for u and write the measure table");
  common(solve, o);

  auto* construct = app.add_subcommand("construct", "build the canonical product and its error field");
  common(construct, o);
  bind(construct, o, "--skip", "skip", "number of leading zeros dropped");
  construct->add_flag("--continuum", o.continuum, "use the continuous Riesz measure");
  bind(construct, o, "--r-min", "r_min", "inner radius of the error grid");
  bind(construct, o, "--grid-radii", "grid_radii", "radii in the error grid");
  bind(construct, o, "--grid-angles", "grid_angles", "angles in the error grid");

  auto* check = app.add_subcommand("check", "run check suites or named acceptance criteria");
  common(check, o);
  check->add_option("--only", o.only, "check targets to run")->delimiter(',');
  check->add_flag("--list", o.list, "print the known check targets");

  auto* measure = app.add_subcommand("measure", "walk-on-spheres harmonic measure estimates");
  common(measure, o);
  bind(measure, o, "--walks", "walks", "walks per radius");
  bind(measure, o, "--radii", "radii", "comma-separated radii");

  auto* report = app.add_subcommand("report", "SVG plots with their CSV data");
  common(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (o.list) {
      for (const auto& t : check_targets()) std::cout << t << "\n";
      return kExitPass;
    }
    const RunConfig cfg = resolve(o);
    if (*solve) return cmd_solve(cfg, std::cout);
    if (*construct) return cmd_construct(cfg, std::cout);
    if (*check) return cmd_check(cfg, std::cout);
    if (*measure) return cmd_measure(cfg, std::cout);
    if (*report) return cmd_report(cfg, std::cout);
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << " (rcond " << e.rcond() << ")\n";
    return kExitSolver;
  } catch (const NonPositivity& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const MissingArtifact& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
