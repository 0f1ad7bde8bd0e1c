#include "kjell/wos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Sparse>

#include "kjell/errors.hpp"
#include "kjell/numerics.hpp"

namespace kjell {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Distance from p to the union of real segments, sorted by lo and disjoint.
double dist_to_slits(const std::vector<Interval>& s, cplx p) {
  if (s.empty()) return std::numeric_limits<double>::infinity();
  const double x = p.real(), y = std::abs(p.imag());
  auto it = std::upper_bound(s.begin(), s.end(), x, [](double v, const Interval& iv) { return v < iv.lo; });
  double best = std::numeric_limits<double>::infinity();
  auto seg = [&](const Interval& iv) {
    const double dx = x < iv.lo ? iv.lo - x : (x > iv.hi ? x - iv.hi : 0.0);
    best = std::min(best, std::hypot(dx, y));
  };
  if (it != s.end()) seg(*it);
  if (it != s.begin()) seg(*std::prev(it));
  return best;
}

double dist_to_square_boundary(const WosConfig& c, cplx p) {
  const cplx d = p - c.center;
  return std::min(c.half_side - std::abs(d.real()), c.half_side - std::abs(d.imag()));
}

}  // namespace

WosConfig example_config(const IntervalSet& set, double r, std::uint64_t n_walks, std::uint64_t seed) {
  if (!(r > 0.0)) throw DomainError("example_config needs r > 0");
  WosConfig c;
  c.center = cplx(-1.5 * r, 0.0);
  c.half_side = 0.25 * r;
  c.epsilon = 1e-6 * c.half_side;
  c.n_walks = n_walks;
  c.seed = seed;
  const double lo = -1.75 * r, hi = -1.25 * r;
  for (auto it = set.intervals().rbegin(); it != set.intervals().rend(); ++it) {
    const double a = std::max(-it->hi, lo), b = std::min(-it->lo, hi);
    if (b >= a) c.slits.push_back({a, b});
  }
  return c;
}

cplx example_start(const IntervalSet& set, double r) {
  const double t = 1.5 * r;
  if (!set.contains(t)) return cplx(-t, 0.0);
  double best = std::numeric_limits<double>::infinity(), mid = t;
  for (const auto& g : set.gaps()) {
    if (!std::isfinite(g.d)) continue;
    const double m = 0.5 * (g.c + g.d);
    if (std::abs(m - t) < best) {
      best = std::abs(m - t);
      mid = m;
    }
  }
  // a gap too far away to sit in the square: step off the axis instead
  if (best > 0.25 * r) return cplx(-t, 0.125 * r);
  return cplx(-mid, 0.0);
}

WosEstimate wos_measure(const WosConfig& cfg, cplx start) {
  if (!(cfg.half_side > 0.0)) throw DomainError("square half side must be positive");
  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < cfg.half_side / 100.0))
    throw DomainError("epsilon must lie in (0, half_side/100)");
  if (cfg.n_walks < 1000) throw DomainError("at least 1000 walks are required");
  if (!(dist_to_square_boundary(cfg, start) > 0.0)) throw DomainError("start lies outside the square");
  std::vector<Interval> slits = cfg.slits;
  std::sort(slits.begin(), slits.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  WosEstimate est;
  est.walks_used = cfg.n_walks;
  if (dist_to_slits(slits, start) <= cfg.epsilon) return est;
  std::uint64_t exits = 0;
  for (std::uint64_t w = 0; w < cfg.n_walks; ++w) {
    std::mt19937_64 gen(splitmix64(cfg.seed ^ splitmix64(w)));
    cplx p = start;
    for (;;) {
      const double ds = dist_to_slits(slits, p);
      if (ds <= cfg.epsilon) break;
      const double db = dist_to_square_boundary(cfg, p);
      if (db <= cfg.epsilon) {
        ++exits;
        break;
      }
      const double phi = 2.0 * kPi * (double(gen() >> 11) * 0x1.0p-53);
      p += std::polar(std::min(ds, db), phi);
    }
  }
  const double n = double(cfg.n_walks);
  est.omega_hat = double(exits) / n;
  est.ci95 = 1.96 * std::sqrt(est.omega_hat * (1.0 - est.omega_hat) / n);
  return est;
}

CheckRecord check_capacity_condition(const IntervalSet& set, double r) {
  CheckRecord c;
  c.name = "capacity";
  c.margin = std::numeric_limits<double>::infinity();
  const double need = 1.0 / (2.0 * r);
  for (double k = std::ceil(1.25 * r); k + 1.0 <= 1.75 * r; k += 1.0) {
    double longest = 0.0;
    for (const auto& iv : set.intervals()) {
      if (iv.hi < k || iv.lo > k + 1.0) continue;
      longest = std::max(longest, std::min(iv.hi, k + 1.0) - std::max(iv.lo, k));
    }
    ++c.samples;
    c.margin = std::min(c.margin, longest - need);
    if (longest < need) {
      if (c.violations == 0) c.detail = "first empty cell at t=" + fmt(k);
      ++c.violations;
    }
  }
  c.passed = c.samples > 0 && c.violations == 0;
  if (c.detail.empty())
    c.detail = "each unit cell holds a slit of length >= 1/(2r), so cap >= 1/(8r) >= 1/(16r) at r=" + fmt(r);
  return c;
}

CheckRecord verify_example_decay(const HarmonicApprox& h, const std::vector<double>& radii,
                                 std::uint64_t n_walks, std::uint64_t seed, std::vector<DecayRow>* rows) {
  CheckRecord c;
  c.name = "example_decay";
  c.margin = std::numeric_limits<double>::infinity();
  std::size_t skipped = 0;
  for (double r : radii) {
    if (3.0 * r > h.trust_radius) {
      ++skipped;
      continue;
    }
    DecayRow row;
    row.r = r;
    row.start = example_start(h.set, r);
    row.u_start = eval_u(h, row.start);
    const WosConfig cfg = example_config(h.set, r, n_walks, seed);
    // u on the square is at most u(|z|), largest at the far corner
    row.boundary_bound = eval_u(h, std::abs(cfg.center - cplx(cfg.half_side, cfg.half_side)));
    row.est = wos_measure(cfg, row.start);
    const double rhs = row.boundary_bound * (row.est.omega_hat + 2.0 * row.est.ci95);
    ++c.samples;
    const double margin = rhs - row.u_start;
    c.margin = std::min(c.margin, margin);
    if (!(margin >= 0.0)) {
      if (c.violations == 0) c.detail = "first violation r=" + fmt(r);
      ++c.violations;
    }
    if (rows) rows->push_back(row);
  }
  c.passed = c.samples > 0 && c.violations == 0;
  if (c.detail.empty())
    c.detail = std::to_string(c.samples) + " radii checked, " + std::to_string(skipped) + " beyond trust/3";
  return c;
}

double fd_rectangle_measure(int n, cplx z) {
  if (n < 2) throw DomainError("finite-difference grid needs n >= 2");
  const int nx = 2 * n + 1, ny = n + 1;  // nodes including the boundary
  const double hh = 1.0 / n;
  auto id = [&](int i, int j) { return (j - 1) * (nx - 2) + (i - 1); };
  const int m = (nx - 2) * (ny - 2);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  auto boundary = [&](int, int j) { return j == 0 ? 0.0 : 1.0; };
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      const int row = id(i, j);
      trip.emplace_back(row, row, 4.0);
      const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& q : nb) {
        if (q[0] == 0 || q[0] == nx - 1 || q[1] == 0 || q[1] == ny - 1) rhs[row] += boundary(q[0], q[1]);
        else trip.emplace_back(row, id(q[0], q[1]), -1.0);
      }
    }
  }
  Eigen::SparseMatrix<double> A(m, m);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw SolverFailure("finite-difference factorisation failed", 0.0);
  const Eigen::VectorXd v = ldlt.solve(rhs);
  auto value = [&](int i, int j) {
    if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1) return boundary(i, j);
    return v[id(i, j)];
  };
  const double gx = (z.real() + 1.0) / hh, gy = z.imag() / hh;
  const int i0 = std::clamp(int(std::floor(gx)), 0, nx - 2), j0 = std::clamp(int(std::floor(gy)), 0, ny - 2);
  const double fx = gx - i0, fy = gy - j0;
  return (1 - fx) * (1 - fy) * value(i0, j0) + fx * (1 - fy) * value(i0 + 1, j0) +
         (1 - fx) * fy * value(i0, j0 + 1) + fx * fy * value(i0 + 1, j0 + 1);
}

double series_rectangle_measure(cplx z, int terms) {
  const double x = z.real() + 1.0, y = z.imag();
  if (!(x > 0.0 && x < 2.0 && y > 0.0 && y < 1.0)) throw DomainError("point outside the open rectangle");
  // the bottom-side problem is 1 minus the measure of the other three sides
  CompensatedSum s;
  for (int n = 1; n <= 2 * terms; n += 2) {
    const double k = n * kPi / 2.0;
    const double ratio = std::exp(-k * y) * -std::expm1(-2.0 * k * (1.0 - y)) / -std::expm1(-2.0 * k);
    s.add(4.0 / (n * kPi) * std::sin(k * x) * ratio);
  }
  return 1.0 - s.value();
}

void write_wos_csv(std::ostream& os, const std::vector<DecayRow>& rows, std::uint64_t seed) {
  os << "r,omega_hat,ci95,n_walks,seed\n";
  for (const auto& r : rows)
    os << fmt(r.r) << "," << fmt(r.est.omega_hat) << "," << fmt(r.est.ci95) << "," << r.est.walks_used << ","
       << seed << "\n";
}

}  // namespace kjell
