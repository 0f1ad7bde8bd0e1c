#include "kjell/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kjell/criteria.hpp"
#include "kjell/entire.hpp"
#include "kjell/errors.hpp"
#include "kjell/growth.hpp"
#include "kjell/hyperbolic.hpp"
#include "kjell/numerics.hpp"
#include "kjell/potential.hpp"
#include "kjell/report.hpp"
#include "kjell/wos.hpp"

namespace kjell {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ls(s);
  std::string item;
  while (std::getline(ls, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw InvalidSpec("config key '" + key + "' expects a number, got '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw InvalidSpec("config key '" + key + "' expects an integer, got '" + v + "'");
  return x;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  const long long x = to_int(key, v);
  if (x < 0) throw InvalidSpec("config key '" + key + "' must be nonnegative");
  return std::uint64_t(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidSpec("config key '" + key + "' expects true or false, got '" + v + "'");
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) { return fs::path(cfg.out) / name; }

void ensure_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw InvalidSpec("cannot create output directory '" + cfg.out + "': " + ec.message());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw InvalidSpec("cannot write " + p.string());
  return os;
}

std::shared_ptr<const HarmonicApprox> load_solution(const RunConfig& cfg) {
  const fs::path p = out_path(cfg, "measure.txt");
  std::ifstream is(p);
  if (!is) throw MissingArtifact("no solve artifact at " + p.string() + "; run 'solve' first");
  auto h = std::make_shared<HarmonicApprox>(read_measure(is));
  if (h->set.hash() != build_set(cfg).hash())
    throw MissingArtifact(p.string() + " was solved for a different set; rerun 'solve'");
  return h;
}

double window_lo(const RunConfig& cfg, const HarmonicApprox& h) {
  if (cfg.window_lo > 0.0) return cfg.window_lo;
  return h.trust_radius > 4.0 ? 2.0 : h.trust_radius / 100.0;
}
double window_hi(const RunConfig& cfg, const HarmonicApprox& h) {
  return cfg.window_hi > 0.0 ? std::min(cfg.window_hi, h.trust_radius) : h.trust_radius;
}

std::vector<cplx> error_grid(const RunConfig& cfg, const HarmonicApprox& h) {
  std::vector<cplx> grid;
  if (!(h.trust_radius > cfg.r_min)) return grid;
  for (double r : logspace(cfg.r_min * 1.0001, h.trust_radius, std::size_t(cfg.grid_radii)))
    for (int j = 0; j < cfg.grid_angles; ++j) grid.push_back(std::polar(r, kPi * (j + 0.5) / cfg.grid_angles));
  return grid;
}

EntireProduct product_for(const RunConfig& cfg, std::shared_ptr<const HarmonicApprox> h) {
  EntireProduct f = make_product(std::move(h), cfg.continuum);
  if (cfg.skip > 0 && !cfg.continuum) f = shifted_variant(f, cfg.skip);
  return f;
}

ApproxErrorReport construct_error(const RunConfig& cfg, const EntireProduct& f, const HarmonicApprox& h) {
  return approx_error(f, h, error_grid(cfg, h), cfg.r_min);
}

// Criterion targets are "criterion<N>" or the criterion's short name.
int criterion_id(const std::string& target) {
  const auto& names = criterion_names();
  for (int i = 0; i < kCriterionCount; ++i)
    if (target == names[i] || target == "criterion" + std::to_string(i + 1)) return i + 1;
  return 0;
}

const std::vector<std::string> kArtifactChecks = {"theta_monotone", "harnack",   "beurling",
                                                  "annulus",        "bracketing", "min_type",
                                                  "extrema",        "zero_table", "example_decay",
                                                  "capacity"};

CheckRecord run_target(const std::string& t, const RunConfig& cfg, const HarmonicApprox& h) {
  const double T = h.trust_radius;
  if (t == "theta_monotone") return check_theta_monotone(h, 100, 100);
  if (t == "harnack") {
    CheckRecord c = harnack_check([&](double r) { return eval_u(h, r); }, h.set,
                                  logspace(std::pow(T, 1.0 / 50.0), T, 50));
    c.name = "harnack";
    return c;
  }
  if (t == "beurling")
    return check_beurling([&](double r) { return eval_u(h, r); }, h.set, random_pairs(T, 100, cfg.seed));
  if (t == "annulus") return check_annulus_harnack(h, h.set.gaps());
  if (t == "bracketing") return check_bracketing(h, T);
  if (t == "min_type") return check_min_type(h).record;
  if (t == "extrema") {
    const auto rep = profile(h, logspace(window_lo(cfg, h), window_hi(cfg, h), 40));
    return rep.checks.front();
  }
  if (t == "zero_table") {
    std::ifstream is(out_path(cfg, "zeros.txt"));
    if (!is) throw MissingArtifact("zero_table needs zeros.txt; run 'construct' first");
    CheckRecord c;
    try {
      c = verify_zero_table(read_zero_table(is), h);
    } catch (const InvalidSpec& e) {
      c.passed = false;
      c.violations = 1;
      c.detail = std::string("unreadable zero table: ") + e.what();
    }
    c.name = "zero_table";
    return c;
  }
  if (t == "example_decay") return verify_example_decay(h, cfg.radii, cfg.walks, cfg.seed);
  if (t == "capacity") {
    CheckRecord all;
    all.name = "capacity";
    all.passed = true;
    all.margin = std::numeric_limits<double>::infinity();
    for (double r : cfg.radii) {
      const auto c = check_capacity_condition(h.set, r);
      all.samples += c.samples;
      all.violations += c.violations;
      all.margin = std::min(all.margin, c.margin);
      all.passed = all.passed && c.passed;
      if (!c.passed && all.detail.empty()) all.detail = c.detail;
    }
    if (all.detail.empty()) all.detail = "unit cells hold long slits at every radius";
    return all;
  }
  throw InvalidSpec("unknown check target '" + t + "'");
}

LinePlot plot(std::string title, std::string xl, std::string yl, bool lx, bool ly) {
  LinePlot p;
  p.title = std::move(title);
  p.xlabel = std::move(xl);
  p.ylabel = std::move(yl);
  p.log_x = lx;
  p.log_y = ly;
  return p;
}

void emit(const RunConfig& cfg, const std::string& stem, const LinePlot& p, const std::vector<std::string>& header,
          const std::vector<std::vector<double>>& cols, std::ostream& log) {
  auto svg = open_out(out_path(cfg, stem + ".svg"));
  write_svg(svg, p);
  auto csv = open_out(out_path(cfg, stem + ".csv"));
  write_columns_csv(csv, header, cols);
  log << "wrote " << stem << ".svg and " << stem << ".csv\n";
}

}  // namespace

void set_config_value(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "family") c.family = v;
  else if (key == "alpha") c.alpha = to_double(key, v);
  else if (key == "beta") c.beta = to_double(key, v);
  else if (key == "rho") c.rho = to_double(key, v);
  else if (key == "p") c.p = to_double(key, v);
  else if (key == "n_min") c.n_min = int(to_int(key, v));
  else if (key == "n_max") c.n_max = int(to_int(key, v));
  else if (key == "intervals") c.intervals = v;
  else if (key == "nodes") c.nodes = int(to_int(key, v));
  else if (key == "max_unknowns") c.max_unknowns = int(to_int(key, v));
  else if (key == "refine_crowded") c.refine_crowded = to_bool(key, v);
  else if (key == "skip") c.skip = to_count(key, v);
  else if (key == "continuum") c.continuum = to_bool(key, v);
  else if (key == "r_min") c.r_min = to_double(key, v);
  else if (key == "grid_radii") c.grid_radii = int(to_int(key, v));
  else if (key == "grid_angles") c.grid_angles = int(to_int(key, v));
  else if (key == "window_lo") c.window_lo = to_double(key, v);
  else if (key == "window_hi") c.window_hi = to_double(key, v);
  else if (key == "samples") c.samples = int(to_int(key, v));
  else if (key == "checks") c.checks = split_list(v);
  else if (key == "seed") c.seed = to_count(key, v);
  else if (key == "walks") c.walks = to_count(key, v);
  else if (key == "radii") {
    c.radii.clear();
    for (const auto& s : split_list(v)) c.radii.push_back(to_double(key, s));
  } else if (key == "out") c.out = v;
  else if (key == "deterministic") c.deterministic = to_bool(key, v);
  else throw InvalidSpec("unknown config key '" + key + "'");
  if (c.nodes < 1 || c.grid_radii < 2 || c.grid_angles < 1 || c.samples < 2)
    throw InvalidSpec("config key '" + key + "' is out of range");
}

RunConfig read_config(std::istream& is) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidSpec("config line " + std::to_string(lineno) + " lacks '='");
    set_config_value(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidSpec("cannot open config " + path);
  return read_config(is);
}

void write_config(std::ostream& os, const RunConfig& c) {
  std::vector<std::string> radii;
  for (double r : c.radii) radii.push_back(fmt(r));
  os << "[set]\nfamily = " << c.family << "\nalpha = " << fmt(c.alpha) << "\nbeta = " << fmt(c.beta)
     << "\nrho = " << fmt(c.rho) << "\np = " << fmt(c.p) << "\nn_min = " << c.n_min << "\nn_max = " << c.n_max
     << "\nintervals = " << c.intervals << "\n\n[solver]\nnodes = " << c.nodes
     << "\nmax_unknowns = " << c.max_unknowns << "\nrefine_crowded = " << (c.refine_crowded ? "true" : "false")
     << "\n\n[construct]\nskip = " << c.skip << "\ncontinuum = " << (c.continuum ? "true" : "false")
     << "\nr_min = " << fmt(c.r_min) << "\ngrid_radii = " << c.grid_radii << "\ngrid_angles = " << c.grid_angles
     << "\n\n[analysis]\nwindow_lo = " << fmt(c.window_lo) << "\nwindow_hi = " << fmt(c.window_hi)
     << "\nsamples = " << c.samples << "\nchecks = " << join(c.checks) << "\n\n[measure]\nseed = " << c.seed
     << "\nwalks = " << c.walks << "\nradii = " << join(radii) << "\n\n[output]\nout = " << c.out
     << "\ndeterministic = " << (c.deterministic ? "true" : "false") << "\n";
}

IntervalSet build_set(const RunConfig& c) {
  if (c.family == "kjellberg") return build_kjellberg(c.alpha, c.beta, c.n_min, c.n_max);
  if (c.family == "corollary") return build_corollary(c.rho, c.n_max);
  if (c.family == "sodin") return build_example_sodin(c.n_max);
  if (c.family == "thick") return build_thick(c.p, c.n_max);
  if (c.family == "intervals") {
    if (c.intervals.empty()) throw InvalidSpec("family 'intervals' needs an interval file");
    return load_interval_set(c.intervals);
  }
  throw InvalidSpec("unknown family '" + c.family + "'");
}

std::vector<std::string> check_targets() {
  std::vector<std::string> t = kArtifactChecks;
  for (int i = 1; i <= kCriterionCount; ++i) t.push_back("criterion" + std::to_string(i));
  for (const auto& n : criterion_names()) t.push_back(n);
  return t;
}

std::vector<std::string> default_checks(const RunConfig& cfg) {
  std::vector<std::string> t = {"theta_monotone", "harnack", "beurling", "annulus",
                                "bracketing",     "min_type", "extrema"};
  if (fs::exists(out_path(cfg, "zeros.txt"))) t.push_back("zero_table");
  if (cfg.family == "sodin") {
    t.push_back("capacity");
    t.push_back("example_decay");
  }
  return t;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const IntervalSet set = build_set(cfg);
  SolveOptions o;
  o.nodes_per_interval = cfg.nodes;
  o.max_unknowns = cfg.max_unknowns;
  o.refine_crowded = cfg.refine_crowded;
  const HarmonicApprox h = solve(set, o);
  ensure_out_dir(cfg);
  {
    auto os = open_out(out_path(cfg, "measure.txt"));
    write_measure(os, h);
  }
  {
    auto os = open_out(out_path(cfg, "solve_diagnostics.txt"));
    os << "unknowns = " << h.diag.unknowns << "\nscaling_passes = " << h.diag.scaling_passes
       << "\nrcond = " << fmt(h.diag.rcond) << "\nboundary_residual = " << fmt(h.diag.boundary_residual)
       << "\nfree_u0 = " << fmt(h.diag.free_u0) << "\nclamped = " << h.diag.clamped
       << "\nu0 = " << fmt(h.u0) << "\ntrust_radius = " << fmt(h.trust_radius)
       << "\nseconds = " << fmt(h.diag.seconds) << "\n";
  }
  {
    auto os = open_out(out_path(cfg, "config.txt"));
    write_config(os, cfg);
  }
  log << "solved " << set.label() << ": " << h.diag.unknowns << " unknowns, rcond " << fmt(h.diag.rcond)
      << ", residual " << fmt(h.diag.boundary_residual) << ", trust radius " << fmt(h.trust_radius) << "\n";
  return kExitPass;
}

int cmd_construct(const RunConfig& cfg, std::ostream& log) {
  const auto h = load_solution(cfg);
  const EntireProduct f = product_for(cfg, h);
  const ApproxErrorReport rep = construct_error(cfg, f, *h);
  {
    auto os = open_out(out_path(cfg, "zeros.txt"));
    write_zero_table(os, f.zeros);
  }
  {
    auto os = open_out(out_path(cfg, "error_field.csv"));
    write_error_field_csv(os, rep);
  }
  {
    auto os = open_out(out_path(cfg, "construct_summary.txt"));
    os << "zeros = " << f.zeros.count() << "\nresolved_zeros = " << f.zeros.resolved_count()
       << "\nskip = " << f.skip << "\ncontinuum = " << (f.continuum ? "true" : "false")
       << "\nlog_C = " << fmt(f.log_C) << "\ngrid_points = " << rep.samples.size()
       << "\nrejected = " << rep.rejected << "\nsup_ratio = " << fmt(rep.sup_ratio)
       << "\nC_fit = " << fmt(rep.C_fit) << "\nviolations = " << rep.violations << "\nR_emp = " << fmt(rep.R_emp)
       << "\n";
  }
  log << "constructed " << f.zeros.count() << " zeros (skip " << f.skip << "), C_fit " << fmt(rep.C_fit)
      << ", R_emp " << fmt(rep.R_emp) << ", " << rep.violations << " upper-bound violations\n";
  return kExitPass;
}

int cmd_check(const RunConfig& cfg, std::ostream& log, std::vector<CheckRecord>* records) {
  const std::vector<std::string> targets = cfg.checks.empty() ? default_checks(cfg) : cfg.checks;
  const std::vector<std::string> known = check_targets();
  for (const auto& t : targets)
    if (std::find(known.begin(), known.end(), t) == known.end())
      throw InvalidSpec("unknown check target '" + t + "'");
  std::shared_ptr<const HarmonicApprox> h;
  std::vector<CheckRecord> out;
  for (const auto& t : targets) {
    if (const int id = criterion_id(t)) {
      ensure_out_dir(cfg);
      const CriterionResult r = run_criterion(id, cfg.out);
      log << format_result(r) << "\n";
      CheckRecord c;
      c.name = "criterion" + std::to_string(id) + "_" + r.name;
      c.passed = r.passed;
      c.margin = r.passed ? 0.0 : -1.0;
      c.samples = r.checks.size();
      for (const auto& sub : r.checks) c.violations += sub.passed ? 0 : 1;
      c.detail = r.detail;
      out.push_back(c);
      continue;
    }
    if (!h) h = load_solution(cfg);
    out.push_back(run_target(t, cfg, *h));
  }
  ensure_out_dir(cfg);
  {
    auto os = open_out(out_path(cfg, "check_summary.txt"));
    write_check_summary(os, out);
  }
  write_check_summary(log, out);
  const bool ok = std::all_of(out.begin(), out.end(), [](const CheckRecord& c) { return c.passed; });
  if (records) *records = out;
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_measure(const RunConfig& cfg, std::ostream& log) {
  const auto h = load_solution(cfg);
  std::vector<DecayRow> rows;
  const CheckRecord rec = verify_example_decay(*h, cfg.radii, cfg.walks, cfg.seed, &rows);
  auto os = open_out(out_path(cfg, "wos.csv"));
  write_wos_csv(os, rows, cfg.seed);
  for (const auto& r : rows)
    log << "r=" << fmt(r.r) << " omega_hat=" << fmt(r.est.omega_hat) << " ci95=" << fmt(r.est.ci95) << "\n";
  write_check_summary(log, {rec});
  return kExitPass;
}

int cmd_report(const RunConfig& cfg, std::ostream& log) {
  const auto h = load_solution(cfg);
  const double lo = window_lo(cfg, *h), hi = window_hi(cfg, *h);
  if (!(hi > lo)) throw DomainError("report window is empty");
  const std::vector<double> radii = logspace(lo, hi, std::size_t(cfg.samples));

  const GrowthReport rep = profile(*h, radii);
  {
    LinePlot p = plot("circle minimum A(r) and maximum B(r)", "r", "value", true, true);
    p.series = {{"B(r)", rep.radii, rep.B}, {"A(r)", rep.radii, rep.A}};
    std::vector<double> scaled;
    for (std::size_t i = 0; i < rep.radii.size(); ++i) scaled.push_back(rep.B[i] / std::sqrt(rep.radii[i]));
    emit(cfg, "growth", p, {"r", "A", "B", "B/sqrt(r)"}, {rep.radii, rep.A, rep.B, scaled}, log);

    std::vector<double> logr;
    for (double r : rep.radii) logr.push_back(std::log(r));
    LinePlot q = plot("u(r)/sqrt(r)", "log r", "u(r)/sqrt(r)", false, false);
    q.series = {{"u(r)/sqrt(r)", logr, scaled}};
    emit(cfg, "envelope", q, {"r", "log_r", "u_over_sqrt_r"}, {rep.radii, logr, scaled}, log);
  }

  std::vector<double> big;
  for (double r : radii)
    if (r > 1.0) big.push_back(r);
  {
    std::vector<double> logr, quot;
    for (double r : big) {
      logr.push_back(std::log(r));
      quot.push_back(log_integral(h->set, r) / std::log(r));
    }
    LinePlot p = plot("log-density quotient of the slit set", "log r", "quotient", false, false);
    p.series = {{"log_integral(r)/log r", logr, quot}};
    emit(cfg, "density", p, {"r", "log_r", "quotient"}, {big, logr, quot}, log);
  }
  {
    const BoundProfile bp = bound_profile(h->set, big);
    std::vector<double> logr, rho, frac, ratio, order;
    for (const auto& row : bp) {
      logr.push_back(std::log(row.r));
      rho.push_back(row.rho_upper);
      frac.push_back(row.active_bound_fraction);
      ratio.push_back(row.rho_upper / std::log(row.r));
      order.push_back(std::log(eval_u(*h, row.r)) / std::log(row.r));
    }
    LinePlot p = plot("hyperbolic bound against growth", "log r", "ratio", false, false);
    p.series = {{"rho_upper(r)/log r", logr, ratio}, {"log u(r)/log r", logr, order}};
    emit(cfg, "rho_upper", p, {"r", "rho_upper", "active_bound_fraction", "rho_upper_over_log_r", "log_u_over_log_r"},
         {big, rho, frac, ratio, order}, log);
  }
  {
    std::vector<std::vector<double>> rows;
    std::ifstream is(out_path(cfg, "error_field.csv"));
    if (is) {
      rows = read_csv_rows(is);
    } else {
      const EntireProduct f = product_for(cfg, h);
      for (const auto& s : construct_error(cfg, f, *h).samples)
        rows.push_back({s.z.real(), s.z.imag(), s.u, s.logf, s.diff});
    }
    HeatMap m;
    m.title = "(log|f| - u)/log|z|";
    m.xlabel = "log |z|";
    m.ylabel = "arg z";
    std::vector<std::vector<double>> cols(5);
    for (const auto& r : rows) {
      if (r.size() < 5) throw InvalidSpec("error_field.csv rows need 5 columns");
      const cplx z(r[0], r[1]);
      m.cells.push_back({std::log(std::abs(z)), std::arg(z), r[4] / std::log(std::abs(z))});
      for (int k = 0; k < 5; ++k) cols[k].push_back(r[k]);
    }
    auto svg = open_out(out_path(cfg, "error_field.svg"));
    write_svg(svg, m);
    auto csv = open_out(out_path(cfg, "error_field.csv"));
    write_columns_csv(csv, {"re", "im", "u", "logf", "diff"}, cols);
    log << "wrote error_field.svg and error_field.csv\n";
  }
  {
    std::vector<std::vector<double>> rows;
    std::ifstream is(out_path(cfg, "wos.csv"));
    if (is) {
      rows = read_csv_rows(is);
    } else {
      std::vector<DecayRow> dr;
      verify_example_decay(*h, cfg.radii, cfg.walks, cfg.seed, &dr);
      for (const auto& d : dr) rows.push_back({d.r, d.est.omega_hat, d.est.ci95});
    }
    std::vector<double> r, om, ci, scaled;
    for (const auto& row : rows) {
      if (row.size() < 3) throw InvalidSpec("wos.csv rows need at least 3 columns");
      r.push_back(row[0]);
      om.push_back(row[1]);
      ci.push_back(row[2]);
      scaled.push_back(row[1] * row[0] / std::log(16.0 * row[0]));
    }
    LinePlot p = plot("harmonic measure of the far square side", "r", "value", true, false);
    p.series = {{"omega_hat", r, om}, {"omega_hat r / log(16 r)", r, scaled}};
    emit(cfg, "omega", p, {"r", "omega_hat", "ci95", "scaled"}, {r, om, ci, scaled}, log);
  }

  if (cfg.family == "sodin") {
    std::vector<double> s, v;
    for (const auto& g : gap_peaks(*h, 1.0, h->trust_radius)) {
      s.push_back(g.s);
      v.push_back(g.value);
    }
    LinePlot p = plot("largest u(-s) over each gap", "s", "u(-s)", true, true);
    p.series = {{"gap peak", s, v}};
    emit(cfg, "decay", p, {"s", "u_minus_s"}, {s, v}, log);
  }
  if (cfg.family == "kjellberg") {
    const double b = cfg.beta;
    const double r0 = std::max(std::pow(b, cfg.n_min), lo), r1 = h->trust_radius / b;
    if (r1 > r0) {
      std::vector<double> rr = logspace(r0, r1, std::size_t(cfg.samples));
      std::vector<double> a0, a1, a2;
      for (double r : rr) {
        auto ratio = [&](double th) { return eval_u(*h, std::polar(b * r, th)) / eval_u(*h, std::polar(r, th)); };
        a0.push_back(ratio(0.0));
        a1.push_back(ratio(kPi / 2));
        a2.push_back(ratio(0.9 * kPi));
      }
      LinePlot p = plot("scaling ratio u(beta z)/u(z)", "|z|", "ratio", true, false);
      p.series = {{"arg z = 0", rr, a0}, {"arg z = pi/2", rr, a1}, {"arg z = 0.9 pi", rr, a2}};
      emit(cfg, "scaling", p, {"r", "ratio_0", "ratio_half_pi", "ratio_0.9pi"}, {rr, a0, a1, a2}, log);
    }
  }
  return kExitPass;
}

}  // namespace kjell
