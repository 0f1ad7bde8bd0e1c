#include "kjell/potential.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kjell/errors.hpp"
#include "kjell/numerics.hpp"

namespace kjell {

namespace {

double bernstein_radius(double zeta) {
  const double a = std::abs(zeta);
  return a + std::sqrt(std::max(a * a - 1.0, 0.0));
}

double cap_extent(const IntervalSet& set) {
  const auto& iv = set.intervals();
  if (iv.empty()) throw InvalidSpec("set with origin needs at least one interval");
  const double lo0 = iv[0].lo;
  if (iv.size() >= 2 && iv[0].hi > iv[0].lo) {
    const double c = lo0 * iv[0].hi / iv[1].lo;
    if (c < lo0) return c;
  }
  return 0.5 * lo0;
}

IntervalSet support_of(const IntervalSet& set) {
  if (!set.includes_origin()) return set;
  std::vector<Interval> iv = set.intervals();
  iv.push_back({0.0, cap_extent(set)});
  return IntervalSet(std::move(iv), true, set.label());
}

std::vector<Panel> build_panels(const IntervalSet& support, const SolveOptions& opts) {
  struct Raw {
    double lo, hi;
    PanelMap map;
  };
  std::vector<Raw> raw;
  for (const auto& iv : support.intervals()) {
    if (iv.degenerate()) continue;  // a point carries no equilibrium mass
    raw.push_back({iv.lo, iv.hi, iv.lo == 0.0 ? PanelMap::Linear : PanelMap::Log});
  }
  if (raw.empty()) throw InvalidSpec("set has no interval of positive length");
  std::vector<Panel> panels;
  int offset = 0;
  const int base = opts.nodes_per_interval;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    Panel p = Panel::make(raw[k].lo, raw[k].hi, raw[k].map, 1, 0);
    int n = base;
    if (p.map == PanelMap::Log) n = base * int(std::ceil(std::max(1.0, 2.0 * p.h / 3.0)));
    if (opts.refine_crowded) {
      auto zeta_of = [&p](double e) {
        return p.map == PanelMap::Log ? (std::log(e) - p.c) / p.h : (e - p.c) / p.h;
      };
      double rho = std::numeric_limits<double>::infinity();
      if (k > 0) rho = std::min(rho, bernstein_radius(zeta_of(raw[k - 1].hi)));
      if (k + 1 < raw.size()) rho = std::min(rho, bernstein_radius(zeta_of(raw[k + 1].lo)));
      if (std::isfinite(rho) && rho > 1.0) {
        const int need = int(std::ceil(23.0 / std::log(rho)));
        n = std::clamp(need, n, 4 * n);
      }
    }
    p = Panel::make(raw[k].lo, raw[k].hi, raw[k].map, n, offset);
    offset += n;
    panels.push_back(p);
  }
  return panels;
}

void fill_nodes(RieszMeasure& mu) {
  int total = 0;
  for (const auto& p : mu.panels) total += p.n;
  mu.nodes.resize(total);
  for (const auto& p : mu.panels)
    for (int j = 0; j < p.n; ++j) mu.nodes[p.offset + j] = p.t_of_s(p.s(j));
}

void fill_cumulative(RieszMeasure& mu) {
  mu.cumulative.resize(mu.weights.size());
  CompensatedSum s;
  for (Eigen::Index j = 0; j < mu.weights.size(); ++j) {
    s.add(mu.weights[j]);
    mu.cumulative[j] = s.value();
  }
}

void kernel_row(const RieszMeasure& mu, cplx z, double* out) {
  const double logw = std::log(std::abs(z));
  for (const auto& p : mu.panels)
    panel_kernel_row(p, mu.nodes.data() + p.offset, z, logw, out + p.offset);
}

double potential_sum(const RieszMeasure& mu, const Eigen::VectorXd& m, cplx z) {
  const double logw = std::log(std::abs(z));
  CompensatedSum s;
  for (const auto& p : mu.panels)
    s.add(panel_potential(p, mu.nodes.data() + p.offset, m.data() + p.offset, z, logw));
  return s.value();
}

}  // namespace

HarmonicApprox solve(const IntervalSet& set, int nodes_per_interval, cplx norm_point) {
  SolveOptions o;
  o.nodes_per_interval = nodes_per_interval;
  o.norm_point = norm_point;
  return solve(set, o);
}

HarmonicApprox solve(const IntervalSet& set, const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opts.nodes_per_interval < 4) throw InvalidSpec("nodes_per_interval must be at least 4");
  HarmonicApprox h;
  h.set = set;
  h.support = support_of(set);
  h.trust_radius = set.max_endpoint() / 10.0;
  if (dist_to_E(h.support, opts.norm_point) == 0.0)
    throw DomainError("normalisation point lies on E");

  RieszMeasure& mu = h.measure;
  mu.panels = build_panels(h.support, opts);
  fill_nodes(mu);
  const Eigen::Index n = mu.nodes.size();
  if (n + 1 > opts.max_unknowns)
    throw SolverFailure("problem needs " + std::to_string(n + 1) + " unknowns, above the limit", 0.0);
  h.diag.unknowns = int(n + 1);

  Eigen::MatrixXd A(n + 1, n + 1);
  {
    std::vector<double> row(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      kernel_row(mu, cplx(-mu.nodes[i], 0.0), row.data());
      for (Eigen::Index j = 0; j < n; ++j) A(i, j) = row[j];
      A(i, n) = 1.0;
    }
    kernel_row(mu, opts.norm_point, row.data());
    for (Eigen::Index j = 0; j < n; ++j) A(n, j) = row[j];
    A(n, n) = 1.0;
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b[n] = 1.0;

  // column scales: rough mass per node from the growth of exp(log integral / 2)
  Eigen::VectorXd d(n + 1);
  for (const auto& p : mu.panels)
    for (int j = 0; j < p.n; ++j) {
      const double t = mu.nodes[p.offset + j];
      d[p.offset + j] = std::exp(0.5 * signed_log_integral(h.support, std::max(t, 1e-300))) / p.n;
    }
  d[n] = 1.0;

  Eigen::VectorXd x;
  Eigen::MatrixXd As(n + 1, n + 1);
  for (int pass = 0; pass < 4; ++pass) {
    ++h.diag.scaling_passes;
    Eigen::VectorXd r(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j <= n; ++j) s += std::abs(A(i, j)) * d[j];
      r[i] = s > 0.0 ? 1.0 / s : 1.0;
    }
    As.noalias() = r.asDiagonal() * A * d.asDiagonal();
    Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu(As);
    h.diag.rcond = lu.rcond();
    x = d.asDiagonal() * lu.solve(r.asDiagonal() * b);
    for (int it = 0; it < 2; ++it) {
      const Eigen::VectorXd res = b - A * x;
      x += d.asDiagonal() * lu.solve(r.asDiagonal() * res);
    }
    if (!x.allFinite()) throw SolverFailure("collocation solve produced non-finite values", h.diag.rcond);

    double worst = 0.0;
    Eigen::VectorXd dn = d;
    for (const auto& p : mu.panels) {
      double mx = 0.0;
      for (int j = 0; j < p.n; ++j) mx = std::max(mx, std::abs(x[p.offset + j]));
      for (int j = 0; j < p.n; ++j) {
        const double v = std::max(std::abs(x[p.offset + j]), 1e-3 * mx);
        dn[p.offset + j] = v > 0.0 ? v : d[p.offset + j];
        worst = std::max(worst, std::abs(std::log(dn[p.offset + j] / d[p.offset + j])));
      }
    }
    dn[n] = std::max(std::abs(x[n]), 1e-3);
    d = dn;
    const double spread = dn.head(n).maxCoeff() / dn.head(n).minCoeff();
    if (worst < std::log(8.0) || spread < 1e6) break;
  }
  if (!(h.diag.rcond > 1e-15))
    throw SolverFailure("collocation matrix is numerically singular", h.diag.rcond);

  mu.weights = x.head(n);
  h.u0 = x[n];
  for (const auto& p : mu.panels) {
    double mx = 0.0;
    for (int j = 0; j < p.n; ++j) mx = std::max(mx, std::abs(mu.weights[p.offset + j]));
    for (int j = 0; j < p.n; ++j) {
      double& m = mu.weights[p.offset + j];
      if (m < 0.0) {
        if (-m > 1e-6 * mx)
          throw NonPositivity("negative Riesz weight " + fmt(m) + " at t=" +
                              fmt(mu.nodes[p.offset + j]));
        m = 0.0;
        ++h.diag.clamped;
      }
    }
  }
  if (h.support.includes_origin()) {
    h.diag.free_u0 = h.u0;
    h.u0 = 0.0;
  }
  const double unorm = h.u0 + potential_sum(mu, mu.weights, opts.norm_point);
  if (!(unorm > 0.0)) throw NonPositivity("u is not positive at the normalisation point");
  mu.weights /= unorm;
  h.u0 /= unorm;
  h.diag.free_u0 /= unorm;
  fill_cumulative(mu);

  double resid = 0.0;
  for (const auto& p : mu.panels) {
    const int stride = std::max(1, p.n / 16);
    for (int k = 1; k < p.n; k += stride) {
      const double t = p.t_of_s(std::cos(std::numbers::pi * k / p.n));
      if (t == 0.0) continue;
      const double on = std::abs(eval_u(h, cplx(-t, 0.0)));
      const double scale = std::max(1.0, eval_u(h, cplx(t, 0.0)));
      resid = std::max(resid, on / scale);
    }
  }
  h.diag.boundary_residual = resid;
  h.diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return h;
}

double eval_u(const HarmonicApprox& h, cplx z) {
  return h.u0 + potential_sum(h.measure, h.measure.weights, z);
}

double mu_cumulative(const HarmonicApprox& h, double r) {
  const auto& t = h.measure.nodes;
  const auto it = std::upper_bound(t.data(), t.data() + t.size(), r);
  const Eigen::Index k = it - t.data();
  return k == 0 ? 0.0 : h.measure.cumulative[k - 1];
}

double oracle_green_segment(double a, double b, cplx z) {
  if (!(a < b)) throw DomainError("oracle_green_segment requires a < b");
  const cplx phi = (2.0 * z + a + b) / (b - a);
  return std::log(std::abs(joukowski_phi(phi)));
}

double oracle_halfline(cplx z) { return std::sqrt(z).real(); }

void write_measure(std::ostream& os, const HarmonicApprox& h) {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(h.set.hash()));
  os << "# measure u0=" << fmt(h.u0) << " trust_radius=" << fmt(h.trust_radius)
     << " set_hash=" << hash << " nodes=" << h.measure.size()
     << " panels=" << h.measure.panels.size() << " origin=" << (h.set.includes_origin() ? 1 : 0)
     << " family=" << (h.set.label().empty() ? "custom" : h.set.label()) << "\n";
  for (const auto& iv : h.set.intervals())
    os << "# interval " << fmt(iv.lo) << " " << fmt(iv.hi) << "\n";
  for (const auto& p : h.measure.panels)
    os << "# panel " << fmt(p.lo) << " " << fmt(p.hi) << " "
       << (p.map == PanelMap::Log ? "log" : "linear") << " " << p.n << "\n";
  for (Eigen::Index j = 0; j < h.measure.size(); ++j)
    os << fmt(h.measure.nodes[j]) << " " << fmt(h.measure.weights[j]) << "\n";
}

HarmonicApprox read_measure(std::istream& is) {
  HarmonicApprox h;
  std::string line;
  bool origin = false;
  std::string label;
  std::vector<Interval> ivs;
  std::vector<double> t, m;
  int offset = 0;
  bool header = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line.rfind("# measure", 0) == 0) {
      header = true;
      std::string tok;
      ls >> tok >> tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "u0") h.u0 = std::stod(val);
        else if (key == "trust_radius") h.trust_radius = std::stod(val);
        else if (key == "origin") origin = val == "1";
        else if (key == "family") {
          std::string rest;
          std::getline(ls, rest);
          label = val + rest;
          break;
        }
      }
    } else if (line.rfind("# interval", 0) == 0) {
      std::string a, b;
      double lo, hi;
      if (!(ls >> a >> b >> lo >> hi)) throw InvalidSpec("measure line " + std::to_string(lineno));
      ivs.push_back({lo, hi});
    } else if (line.rfind("# panel", 0) == 0) {
      std::string a, b, map;
      double lo, hi;
      int n;
      if (!(ls >> a >> b >> lo >> hi >> map >> n) || n < 1)
        throw InvalidSpec("measure line " + std::to_string(lineno));
      h.measure.panels.push_back(
          Panel::make(lo, hi, map == "linear" ? PanelMap::Linear : PanelMap::Log, n, offset));
      offset += n;
    } else if (line[0] == '#') {
      continue;
    } else {
      double a, b;
      if (!(ls >> a >> b)) throw InvalidSpec("measure line " + std::to_string(lineno));
      t.push_back(a);
      m.push_back(b);
    }
  }
  if (!header) throw InvalidSpec("measure file lacks header");
  if (int(t.size()) != offset) throw InvalidSpec("measure node count does not match panels");
  h.set = IntervalSet(ivs, origin, label == "custom" ? std::string{} : label);
  h.support = support_of(h.set);
  h.measure.nodes = Eigen::Map<Eigen::VectorXd>(t.data(), Eigen::Index(t.size()));
  h.measure.weights = Eigen::Map<Eigen::VectorXd>(m.data(), Eigen::Index(m.size()));
  fill_cumulative(h.measure);
  return h;
}

}  // namespace kjell
