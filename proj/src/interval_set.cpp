#include "kjell/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "kjell/errors.hpp"
#include "kjell/numerics.hpp"

namespace kjell {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

IntervalSet::IntervalSet(std::vector<Interval> intervals, bool includes_origin, std::string label)
    : includes_origin_(includes_origin), label_(std::move(label)) {
  for (const auto& iv : intervals) {
    if (!(iv.lo >= 0.0) || !(iv.hi >= iv.lo) || !std::isfinite(iv.hi))
      throw InvalidSpec("interval [" + fmt(iv.lo) + ", " + fmt(iv.hi) + "] is malformed");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
      merged_ = true;
    } else {
      intervals_.push_back(iv);
    }
  }
}

std::vector<Gap> IntervalSet::gaps() const {
  std::vector<Gap> out;
  for (std::size_t i = 0; i + 1 < intervals_.size(); ++i)
    out.push_back({intervals_[i].hi, intervals_[i + 1].lo});
  return out;
}

bool IntervalSet::contains(double t) const {
  if (t == 0.0 && includes_origin_) return true;
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  return std::prev(it)->contains(t);
}

std::uint64_t IntervalSet::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(includes_origin_ ? 1 : 0);
  for (const auto& iv : intervals_) {
    std::uint64_t a, b;
    std::memcpy(&a, &iv.lo, 8);
    std::memcpy(&b, &iv.hi, 8);
    mix(a);
    mix(b);
  }
  return h;
}

IntervalSet build_kjellberg(double alpha, double beta, int n_min, int n_max) {
  if (!(alpha > 1.0) || !(beta > alpha))
    throw InvalidSpec("kjellberg requires 1 < alpha < beta");
  if (n_min > n_max) throw InvalidSpec("kjellberg requires n_min <= n_max");
  std::vector<Interval> iv;
  for (int n = n_min; n <= n_max; ++n) {
    const double b = std::pow(beta, n);
    if (!std::isfinite(alpha * b) || b == 0.0) throw InvalidSpec("kjellberg endpoint overflows");
    iv.push_back({b, alpha * b});
  }
  return IntervalSet(std::move(iv), true,
                     "kjellberg alpha=" + fmt(alpha) + " beta=" + fmt(beta) +
                         " n_min=" + std::to_string(n_min) + " n_max=" + std::to_string(n_max));
}

IntervalSet build_corollary(double rho, int n_max) {
  if (!(rho >= 0.0) || !(rho < 0.5)) throw InvalidSpec("corollary requires 0 <= rho < 1/2");
  if (n_max < 0) throw InvalidSpec("corollary requires n_max >= 0");
  std::vector<Interval> iv;
  for (int n = 0; n <= n_max; ++n) {
    const double nn = n;
    const double logb = rho == 0.0 ? nn * nn * nn : nn * nn / (4.0 * rho);
    if (logb > 700.0) throw InvalidSpec("corollary endpoint overflows at n=" + std::to_string(n));
    iv.push_back({std::exp(logb - nn), std::exp(logb)});
  }
  return IntervalSet(std::move(iv), false,
                     "corollary rho=" + fmt(rho) + " n_max=" + std::to_string(n_max));
}

IntervalSet build_example_sodin(int n_max) {
  if (n_max < 1) throw InvalidSpec("sodin example requires n_max >= 1");
  std::vector<Interval> iv;
  for (int n = 1; n <= n_max; ++n) iv.push_back({double(n), n + 1.0 / n});
  return IntervalSet(std::move(iv), false, "sodin n_max=" + std::to_string(n_max));
}

IntervalSet build_thick(double p, int n_max) {
  if (!(p > 0.0) || !(p < 1.0)) throw InvalidSpec("thick requires 0 < p < 1");
  if (n_max < 0) throw InvalidSpec("thick requires n_max >= 0");
  std::vector<Interval> iv;
  double a = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double b = 2.0 * a;
    if (!std::isfinite(b)) throw InvalidSpec("thick endpoint overflows");
    iv.push_back({a, b});
    a = b + std::pow(b, p);
  }
  return IntervalSet(std::move(iv), false,
                     "thick p=" + fmt(p) + " n_max=" + std::to_string(n_max));
}

namespace {

double log_measure_between(const IntervalSet& set, double x, double y) {
  CompensatedSum s;
  for (const auto& iv : set.intervals()) {
    const double lo = std::max(iv.lo, x), hi = std::min(iv.hi, y);
    if (hi > lo) s.add(std::log(hi / lo));
  }
  return s.value();
}

}  // namespace

double log_integral(const IntervalSet& set, double r) {
  if (!(r > 1.0)) throw DomainError("log_integral requires r > 1");
  return log_measure_between(set, 1.0, r);
}

double signed_log_integral(const IntervalSet& set, double r) {
  if (!(r > 0.0)) throw DomainError("signed_log_integral requires r > 0");
  if (r >= 1.0) return log_measure_between(set, 1.0, r);
  return -log_measure_between(set, r, 1.0);
}

DensityEstimate log_densities(const IntervalSet& set, double window_lo, double window_hi,
                              std::size_t samples) {
  if (!(window_lo > 1.0) || !(window_hi > window_lo))
    throw DomainError("density window must satisfy 1 < lo < hi");
  std::vector<double> rs = logspace(window_lo, window_hi, std::max<std::size_t>(samples, 2));
  for (const auto& iv : set.intervals()) {
    for (double e : {iv.lo, iv.hi})
      if (e > window_lo && e < window_hi) rs.push_back(e);
  }
  DensityEstimate d;
  d.window_lo = window_lo;
  d.window_hi = window_hi;
  d.samples = rs.size();
  d.upper = -std::numeric_limits<double>::infinity();
  d.lower = std::numeric_limits<double>::infinity();
  for (double r : rs) {
    const double q = log_integral(set, r) / std::log(r);
    d.upper = std::max(d.upper, q);
    d.lower = std::min(d.lower, q);
  }
  return d;
}

IntervalSet complement_within(const IntervalSet& set, double r_max) {
  std::vector<Interval> out;
  double cur = 1.0;
  for (const auto& iv : set.intervals()) {
    if (iv.hi <= cur) continue;
    if (iv.lo >= r_max) break;
    if (iv.lo > cur) out.push_back({cur, iv.lo});
    cur = iv.hi;
  }
  if (cur < r_max) out.push_back({cur, r_max});
  return IntervalSet(std::move(out), false, "complement");
}

double dist_to_E(const IntervalSet& set, cplx z) {
  const double x = -z.real(), y = std::abs(z.imag());
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double lo, double hi) {
    const double dx = x < lo ? lo - x : (x > hi ? x - hi : 0.0);
    best = std::min(best, std::hypot(dx, y));
  };
  if (set.includes_origin()) consider(0.0, 0.0);
  const auto& iv = set.intervals();
  auto it = std::upper_bound(iv.begin(), iv.end(), x,
                             [](double v, const Interval& a) { return v < a.lo; });
  if (it != iv.end()) consider(it->lo, it->hi);
  if (it != iv.begin()) consider(std::prev(it)->lo, std::prev(it)->hi);
  return best;
}

bool in_D1(const IntervalSet& set, cplx z) { return dist_to_E(set, z) > 1.0; }

void write_interval_set(std::ostream& os, const IntervalSet& set) {
  os << "# intervals origin=" << (set.includes_origin() ? 1 : 0)
     << " count=" << set.size() << " family=" << (set.label().empty() ? "custom" : set.label())
     << "\n";
  for (const auto& iv : set.intervals()) os << fmt(iv.lo) << " " << fmt(iv.hi) << "\n";
}

IntervalSet read_interval_set(std::istream& is) {
  std::string line;
  bool origin = false;
  std::string label;
  std::vector<Interval> iv;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!header_seen && line.rfind("# intervals", 0) == 0) {
        header_seen = true;
        std::istringstream hs(line.substr(11));
        std::string tok;
        while (hs >> tok) {
          if (tok.rfind("origin=", 0) == 0) {
            origin = tok.substr(7) == "1";
          } else if (tok.rfind("family=", 0) == 0) {
            label = tok.substr(7);
            std::string rest;
            std::getline(hs, rest);
            label += rest;
            break;
          }
        }
      }
      continue;
    }
    std::istringstream ls(line);
    double lo, hi;
    std::string extra;
    if (!(ls >> lo >> hi) || (ls >> extra))
      throw InvalidSpec("interval file line " + std::to_string(lineno) + ": expected 'lo hi'");
    iv.push_back({lo, hi});
  }
  return IntervalSet(std::move(iv), origin, label == "custom" ? std::string{} : label);
}

IntervalSet load_interval_set(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidSpec("cannot open interval file " + path);
  return read_interval_set(f);
}

void save_interval_set(const std::string& path, const IntervalSet& set) {
  std::ofstream f(path);
  if (!f) throw InvalidSpec("cannot write " + path);
  write_interval_set(f, set);
}

}  // namespace kjell
