#include "kjell/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "kjell/errors.hpp"
#include "kjell/numerics.hpp"

namespace kjell {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Breakpoints of the integrand in u = log t on [0, log r].
std::vector<double> breakpoints(const IntervalSet& norm, double r, BoundMode mode) {
  const double L = std::log(r);
  std::vector<double> b{0.0, L};
  auto add = [&](double t) {
    if (t > 0.0) {
      const double u = std::log(t);
      if (u > 0.0 && u < L) b.push_back(u);
    }
  };
  const auto& iv = norm.intervals();
  for (std::size_t k = 0; k < iv.size(); ++k) {
    add(iv[k].lo);
    add(iv[k].hi);
    add(0.5 * iv[k].lo);
    add(2.0 * iv[k].hi);
    if (k + 1 < iv.size()) add(std::sqrt(iv[k].hi * iv[k + 1].lo));
    if (mode == BoundMode::Minimum) {
      add(iv[k].hi * std::exp(std::numbers::pi));
      if (iv[k].lo > 0.0) add(iv[k].lo * std::exp(-std::numbers::pi));
    }
  }
  return b;
}

double beta_normalized(const IntervalSet& norm, double t) {
  if (norm.contains(t)) return 0.0;
  const auto& iv = norm.intervals();
  auto it = std::upper_bound(iv.begin(), iv.end(), t,
                             [](double v, const Interval& a) { return v < a.lo; });
  double best = std::log(t / std::prev(it)->hi);
  if (it != iv.end()) best = std::min(best, std::log(it->lo / t));
  return best;
}

// Integrand t * density in the variable u = log t.
double scaled_density(const IntervalSet& norm, const IntervalSet& ep, double u, BoundMode mode) {
  const double t = std::exp(u);
  const double beta = beta_normalized(norm, t);
  if (mode == BoundMode::Windowed) {
    if (ep.contains(t) || beta == 0.0) return 0.5;
    return kHalfPi / beta;
  }
  return beta <= 0.0 ? 0.5 : std::min(0.5, kHalfPi / beta);
}

}  // namespace

IntervalSet normalized_for_bounds(const IntervalSet& set) {
  std::vector<Interval> iv = set.intervals();
  iv.push_back({0.0, 1.0});
  return IntervalSet(std::move(iv), true, set.label());
}

double beta_D(const IntervalSet& set, double t) {
  if (!(t > 0.0)) throw DomainError("beta_D requires t > 0");
  return beta_normalized(normalized_for_bounds(set), t);
}

double density_upper(const IntervalSet& set, double t) {
  const double beta = beta_D(set, t);
  const double a = 0.5 / t;
  if (beta == 0.0) return a;
  return std::min(a, kHalfPi / (t * beta));
}

IntervalSet e_prime(const IntervalSet& set) {
  std::vector<Interval> out;
  for (const auto& iv : set.intervals()) out.push_back({0.5 * iv.lo, 2.0 * iv.hi});
  return IntervalSet(std::move(out), set.includes_origin(), set.label());
}

double rho_upper(const IntervalSet& set, double r, BoundMode mode) {
  if (!(r > 1.0)) throw DomainError("rho_upper requires r > 1");
  const IntervalSet norm = normalized_for_bounds(set);
  const IntervalSet ep = e_prime(norm);
  auto f = [&](double u) { return scaled_density(norm, ep, u, mode); };
  return adaptive_simpson_pieces(f, breakpoints(norm, r, mode), 1e-7);
}

double active_bound_fraction(const IntervalSet& set, double r) {
  if (!(r > 1.0)) throw DomainError("active_bound_fraction requires r > 1");
  const IntervalSet norm = normalized_for_bounds(set);
  auto f = [&](double u) {
    const double beta = beta_normalized(norm, std::exp(u));
    return beta > std::numbers::pi ? 1.0 : 0.0;
  };
  return adaptive_simpson_pieces(f, breakpoints(norm, r, BoundMode::Minimum), 1e-7) / std::log(r);
}

BoundProfile bound_profile(const IntervalSet& set, const std::vector<double>& radii, BoundMode mode) {
  BoundProfile p;
  for (double r : radii) p.push_back({r, rho_upper(set, r, mode), active_bound_fraction(set, r)});
  return p;
}

void write_bound_profile_csv(std::ostream& os, const BoundProfile& p) {
  os << "r,rho_upper,active_bound_fraction\n";
  for (const auto& row : p)
    os << fmt(row.r) << "," << fmt(row.rho_upper) << "," << fmt(row.active_bound_fraction) << "\n";
}

CheckRecord harnack_check(const std::function<double(double)>& u_pos, const IntervalSet& support,
                          const std::vector<double>& radii, BoundMode mode) {
  CheckRecord c;
  c.name = "harnack";
  c.margin = std::numeric_limits<double>::infinity();
  const double u1 = u_pos(1.0);
  for (double r : radii) {
    if (!(r > 1.0)) continue;
    const double lhs = std::log(u_pos(r) / u1);
    const double slack = rho_upper(support, r, mode) + 1e-6 - lhs;
    ++c.samples;
    if (!(slack >= 0.0)) ++c.violations;
    c.margin = std::min(c.margin, slack);
  }
  c.passed = c.samples > 0 && c.violations == 0;
  c.detail = "log(u(r)/u(1)) against the hyperbolic distance bound";
  return c;
}

}  // namespace kjell
