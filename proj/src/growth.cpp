#include "kjell/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "kjell/errors.hpp"
#include "kjell/hyperbolic.hpp"
#include "kjell/numerics.hpp"

namespace kjell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

CheckRecord make_record(const std::string& name) {
  CheckRecord c;
  c.name = name;
  c.margin = kInf;
  return c;
}

void note(CheckRecord& c, double margin, const std::string& where) {
  ++c.samples;
  c.margin = std::min(c.margin, margin);
  if (!(margin >= 0.0)) {
    if (c.violations == 0) c.detail = "first violation " + where;
    ++c.violations;
  }
}

std::string at(double r) { return "r=" + fmt(r); }

double log_measure_between(const IntervalSet& set, double x, double y) {
  CompensatedSum s;
  for (const auto& iv : set.intervals()) {
    const double lo = std::max(iv.lo, x), hi = std::min(iv.hi, y);
    if (hi > lo && lo > 0.0) s.add(std::log(hi / lo));
  }
  return s.value();
}

// Maximiser of a unimodal function on (a, b) by golden section.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-10 * b; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

GrowthReport profile(const HarmonicApprox& h, const std::vector<double>& radii) {
  GrowthReport rep;
  CheckRecord ext = make_record("extrema");
  CheckRecord order = make_record("A_le_B");
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("profile radii must be positive");
    const double A = eval_u(h, cplx(-r, 0.0)), B = eval_u(h, cplx(r, 0.0));
    rep.radii.push_back(r);
    rep.A.push_back(A);
    rep.B.push_back(B);
    const double tol = 1e-9 * std::max(std::abs(B), 1e-300);
    note(order, B - A + tol, at(r));
    for (int j = 0; j < 64; ++j) {
      const double v = eval_u(h, std::polar(r, 2.0 * kPi * j / 64.0));
      note(ext, std::min(B + tol - v, v - A + tol), at(r));
    }
  }
  ext.passed = ext.violations == 0;
  order.passed = order.violations == 0;
  if (ext.detail.empty()) ext.detail = "64 angles per radius";
  rep.checks = {ext, order};
  return rep;
}

GrowthReport profile(const EntireProduct& f, const std::vector<double>& radii) {
  GrowthReport rep;
  CheckRecord order = make_record("A_le_B");
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("profile radii must be positive");
    const double A = min_modulus(f, r), B = max_modulus(f, r);
    rep.radii.push_back(r);
    rep.A.push_back(A);
    rep.B.push_back(B);
    note(order, B - A + 1e-12 * std::max(1.0, std::abs(B)), at(r));
  }
  order.passed = order.violations == 0;
  rep.checks = {order};
  return rep;
}

OrderFit order_fit(const GrowthReport& rep, double window_lo, double window_hi) {
  if (!(window_lo > 1.0) || !(window_hi > window_lo)) throw DomainError("order window must satisfy 1 < lo < hi");
  OrderFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.order = -kInf;
  fit.lower_order = kInf;
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    const double r = rep.radii[i];
    if (r < window_lo || r > window_hi) continue;
    if (!(rep.B[i] > 0.0)) throw DomainError("nonpositive B in the order window at " + at(r));
    const double q = std::log(rep.B[i]) / std::log(r);
    fit.order = std::max(fit.order, q);
    fit.lower_order = std::min(fit.lower_order, q);
    ++fit.samples;
  }
  if (fit.samples == 0) throw DomainError("no profile radii inside the order window");
  return fit;
}

double beurling_exponent(const IntervalSet& set, double r1, double r2) {
  return 0.5 * log_measure_between(set, r1, r2);
}

CheckRecord check_beurling(const std::function<double(double)>& B, const IntervalSet& set,
                           const std::vector<std::pair<double, double>>& pairs) {
  CheckRecord c = make_record("beurling");
  for (const auto& [r1, r2] : pairs) {
    if (!(r1 > 0.0) || !(r2 > r1)) throw DomainError("beurling pairs need 0 < r1 < r2");
    const double margin = std::log(B(r2)) - (std::log(0.5) + beurling_exponent(set, r1, r2) + std::log(B(r1)));
    // strict inequality: a zero margin fails
    note(c, margin > 0.0 ? margin : -1.0 + margin, "r1=" + fmt(r1) + " r2=" + fmt(r2));
  }
  c.passed = c.samples > 0 && c.violations == 0;
  if (c.detail.empty()) c.detail = "log B(r2) - log(B(r1) exp(I/2) / 2)";
  return c;
}

std::vector<std::pair<double, double>> random_pairs(double r_max, std::size_t n, std::uint64_t seed) {
  if (!(r_max > 1.0)) throw DomainError("random_pairs needs r_max > 1");
  std::mt19937_64 gen(seed);
  auto unit = [&] { return double(gen() >> 11) * 0x1.0p-53; };
  const double L = std::log(r_max);
  std::vector<std::pair<double, double>> out;
  while (out.size() < n) {
    double a = unit() * L, b = unit() * L;
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    out.emplace_back(std::exp(a), std::exp(b));
  }
  return out;
}

CheckRecord check_barry(const OrderFit& fit, const DensityEstimate& positivity, double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) throw DomainError("barry alpha must lie in (0, 1]");
  CheckRecord c = make_record("barry");
  const double need_lower = 1.0 - fit.order / alpha - 0.05;
  const double need_upper = 1.0 - fit.lower_order / alpha - 0.05;
  note(c, positivity.lower - need_lower, "lower density");
  note(c, positivity.upper - need_upper, "upper density");
  c.passed = c.violations == 0;
  std::ostringstream os;
  os << "lower " << fmt(positivity.lower) << " >= " << fmt(need_lower) << ", upper " << fmt(positivity.upper)
     << " >= " << fmt(need_upper);
  if (c.detail.empty()) c.detail = os.str();
  else c.detail += "; " + os.str();
  return c;
}

double poisson_lower_bound(const HarmonicApprox& h, double r) {
  const double T = h.trust_radius;
  // gaps of the support inside [0, T] in the variable v = sqrt(s)
  std::vector<std::pair<double, double>> gaps;
  double cur = 0.0;
  for (const auto& iv : h.support.intervals()) {
    if (iv.lo > cur) gaps.emplace_back(cur, std::min(iv.lo, T));
    cur = std::max(cur, iv.hi);
    if (cur >= T) break;
  }
  if (cur < T) gaps.emplace_back(cur, T);
  auto g = [&](double v) { return eval_u(h, cplx(-v * v, 0.0)) / (v * v + r); };
  CompensatedSum s;
  for (const auto& [a, b] : gaps) {
    if (!(b > a)) continue;
    const double va = std::sqrt(a), vb = std::sqrt(b);
    const double scale = std::max(eval_u(h, cplx(std::sqrt(a * b) + 0.5 * (a + b), 0.0)), 1.0);
    s.add(adaptive_simpson(g, va, vb, 1e-10 * scale * (vb - va) / (vb * vb + r), 30));
  }
  return 2.0 * std::sqrt(r) / kPi * s.value();
}

MinTypeResult check_min_type(const HarmonicApprox& h, double window_lo) {
  MinTypeResult res;
  const double T = h.trust_radius;
  if (!(T > window_lo)) throw DomainError("trust radius below the min-type window");
  res.radii = logspace(window_lo, T, 200);
  CheckRecord c = make_record("min_type");
  for (std::size_t i = 0; i < res.radii.size(); ++i) {
    const double r = res.radii[i];
    res.scaled.push_back(eval_u(h, r) / std::sqrt(r));
    if (i > 0) note(c, res.scaled[i - 1] * (1.0 + 1e-6) - res.scaled[i], "monotone " + at(r));
  }
  res.decay_factor = res.scaled.front() / res.scaled.back();
  for (double r : logspace(window_lo, T, 10)) {
    const double lhs = eval_u(h, r);
    note(c, lhs - poisson_lower_bound(h, r) + 1e-9 * lhs, "poisson " + at(r));
  }
  c.passed = c.violations == 0;
  if (c.detail.empty()) c.detail = "decay factor " + fmt(res.decay_factor) + " over [" + fmt(window_lo) + ", " + fmt(T) + "]";
  res.record = c;
  return res;
}

double annulus_bound(double c, double d) {
  if (!(c > 0.0) || !(d > c)) throw DomainError("annulus needs 0 < c < d");
  return std::exp(kPi * kPi / std::log(d / c));
}

CheckRecord check_annulus_harnack(const HarmonicApprox& h, const std::vector<Gap>& gaps, int angles) {
  CheckRecord rec = make_record("annulus_harnack");
  std::size_t skipped = 0;
  for (const auto& g : gaps) {
    const double core = std::sqrt(g.c * g.d);
    if (!(g.c > 0.0) || !(g.d > g.c) || !std::isfinite(g.d) || core > h.trust_radius) {
      ++skipped;
      continue;
    }
    double mx = -kInf, mn = kInf;
    for (int j = 0; j < angles; ++j) {
      const double v = eval_u(h, std::polar(core, 2.0 * kPi * j / angles));
      mx = std::max(mx, v);
      mn = std::min(mn, v);
    }
    const double bound = annulus_bound(g.c, g.d);
    note(rec, std::log(bound) - std::log(mx / mn) + 1e-9, "gap (" + fmt(g.c) + ", " + fmt(g.d) + ")");
  }
  rec.passed = rec.violations == 0;
  if (rec.detail.empty())
    rec.detail = std::to_string(rec.samples) + " gaps, " + std::to_string(skipped) + " outside trust or at 0";
  return rec;
}

CheckRecord check_theta_monotone(const HarmonicApprox& h, int n_radii, int n_angles, double slack) {
  CheckRecord c = make_record("theta_monotone");
  const auto radii = logspace(1e-2, h.trust_radius, std::size_t(n_radii));
  double prev_scaled = kInf;
  for (double r : radii) {
    const double B = eval_u(h, cplx(r, 0.0));
    const double scaled = B / std::sqrt(r);
    note(c, prev_scaled * (1.0 + slack) - scaled, "sqrt decrease " + at(r));
    prev_scaled = scaled;
    double prev = kInf;
    for (int k = 0; k < n_angles; ++k) {
      const double th = kPi * k / (n_angles - 1);
      const double v = eval_u(h, std::polar(r, th));
      note(c, prev + slack * B - v, "theta " + at(r) + " th=" + fmt(th));
      prev = v;
    }
  }
  c.passed = c.violations == 0;
  if (c.detail.empty()) c.detail = std::to_string(n_radii) + " radii x " + std::to_string(n_angles) + " angles";
  return c;
}

Bracket bracket(const HarmonicApprox& h, double r) {
  if (!(r > 1.0)) throw DomainError("bracketing needs r > 1");
  Bracket b;
  const double L = std::log(r);
  b.beurling_ratio = 0.5 * log_integral(h.set, r) / L;
  b.lower = b.beurling_ratio - std::log(2.0) / L;
  b.value = std::log(eval_u(h, r)) / L;
  b.rho_upper_ratio = rho_upper(h.set, r) / L;
  b.upper = b.rho_upper_ratio + std::log(eval_u(h, 1.0)) / L;
  return b;
}

CheckRecord check_bracketing(const HarmonicApprox& h, double r) {
  const Bracket b = bracket(h, r);
  CheckRecord c = make_record("bracketing");
  note(c, b.value - b.lower, "lower " + at(r));
  note(c, b.upper - b.value, "upper " + at(r));
  c.passed = c.violations == 0;
  std::ostringstream os;
  os << fmt(b.lower) << " <= " << fmt(b.value) << " <= " << fmt(b.upper) << " at " << at(r);
  c.detail = c.detail.empty() ? os.str() : c.detail + "; " + os.str();
  return c;
}

std::vector<GapPeak> gap_peaks(const HarmonicApprox& h, double r_lo, double r_hi) {
  std::vector<GapPeak> out;
  auto A = [&](double s) { return eval_u(h, cplx(-s, 0.0)); };
  for (const auto& g : h.support.gaps()) {
    if (!std::isfinite(g.d) || g.d < r_lo || g.c > r_hi) continue;
    const auto [s, v] = golden_max(A, g.c, g.d);
    out.push_back({g.c, g.d, s, v});
  }
  return out;
}

CheckRecord check_negative_axis_decay(const HarmonicApprox& h, double r_lo, double r_hi) {
  CheckRecord c = make_record("negative_axis_decay");
  const auto peaks = gap_peaks(h, r_lo, r_hi);
  if (peaks.size() < 2) {
    c.detail = "fewer than two gaps in the window";
    return c;
  }
  for (std::size_t i = 1; i < peaks.size(); ++i)
    note(c, peaks[i - 1].value * (1.0 + 1e-9) - peaks[i].value, "gap at " + fmt(peaks[i].c));
  note(c, 0.5 * peaks.front().value - peaks.back().value, "half decay");
  c.passed = c.violations == 0;
  std::ostringstream os;
  os << "peak u(-s) " << fmt(peaks.front().value) << " near " << fmt(peaks.front().s) << " to "
     << fmt(peaks.back().value) << " near " << fmt(peaks.back().s);
  c.detail = c.detail.empty() ? os.str() : c.detail + "; " + os.str();
  return c;
}

void write_growth_csv(std::ostream& os, const GrowthReport& rep) {
  os << "r,A,B,B/sqrt(r)\n";
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    os << fmt(rep.radii[i]) << "," << fmt(rep.A[i]) << "," << fmt(rep.B[i]) << ","
       << fmt(rep.B[i] / std::sqrt(rep.radii[i])) << "\n";
}

}  // namespace kjell
