#include "kjell/entire.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kjell/errors.hpp"
#include "kjell/numerics.hpp"

namespace kjell {

namespace {

constexpr double kPi = std::numbers::pi;

// Panel mass below angle th and density g(th), both by one rotation recurrence.
void mass_and_density(const std::vector<double>& a, double th, double& mass, double& g) {
  const cplx rot = std::polar(1.0, th);
  cplx e = rot;
  mass = a[0] * (kPi - th);
  g = a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    mass -= a[k] * e.imag() / double(k);
    g += a[k] * e.real();
    e *= rot;
  }
}

inline double log_factor(cplx z, double x) {
  const double qr = z.real() / x, qi = z.imag() / x;
  const double q2 = qr * qr + qi * qi;
  if (q2 < 0.25) return 0.5 * std::log1p(2.0 * qr + q2);
  const double m = (1.0 + qr) * (1.0 + qr) + qi * qi;
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(m);
}

inline double dist_to_segment(cplx w, double a, double b) {
  const double x = w.real();
  const double dx = x < a ? a - x : (x > b ? x - b : 0.0);
  return std::hypot(dx, w.imag());
}

// Exact mass levels are representable only below 2^53.
constexpr double kExactMass = 9007199254740992.0;

// Gauss-Legendre on geometrically graded cells accumulating at c in [a, b].
double graded_gl(const std::function<double(double)>& f, double a, double b, double c, double floor_rel) {
  const auto& gl = gauss_legendre(16);
  CompensatedSum acc;
  auto cell = [&](double lo, double hi) {
    const double m = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.x.size(); ++i) acc.add(gl.w[i] * r * f(m + r * gl.x[i]));
  };
  const double floor_w = floor_rel * std::max(1.0, b - a);
  for (int side = 0; side < 2; ++side) {
    double far_end = side == 0 ? a : b;
    double len = std::abs(far_end - c);
    while (len > floor_w) {
      const double near_end = side == 0 ? c - 0.5 * len : c + 0.5 * len;
      if (side == 0) cell(far_end, near_end);
      else cell(near_end, far_end);
      far_end = near_end;
      len *= 0.5;
    }
    if (side == 0) cell(far_end, c);
    else cell(c, far_end);
  }
  return acc.value();
}

// Antiderivative of log|nu - kappa| in nu: Re[(nu - kappa)(Log(nu - kappa) - 1)].
double log_antiderivative(cplx xi) {
  if (xi == cplx(0.0, 0.0)) return 0.0;
  if (xi.imag() == 0.0) return xi.real() * (std::log(std::abs(xi.real())) - 1.0);
  return (xi * (std::log(xi) - 1.0)).real();
}

// D = sum over zeros of log|1 + z/x_n| minus the same integral against mu, per panel.
class Difference {
 public:
  Difference(const ContinuumMeasure& mu, cplx z) : mu_(mu), z_(z), w_(-z) {}

  // Contribution of panel k for zeros n >= first; false when the panel is unresolved.
  bool panel(std::size_t k, double first) {
    const auto& pm = mu_.panels()[k];
    if (pm.mass <= 0.0) return true;
    const double mb = pm.mass_before, top = mb + pm.mass;
    if (top >= kExactMass) return false;
    double p = std::max(std::floor(mb) + 1.0, first);
    double q = std::floor(top);
    double lo = mb, hi = top;
    if (p > q) {
      add(-integral(k, lo, hi));
      return true;
    }
    if (p - 0.5 < lo && p == std::floor(mb) + 1.0) {
      const double e = std::min(p + 0.5, hi);
      add(F(k, p) - integral(k, lo, e));
      lo = e;
      p += 1.0;
    }
    if (p <= q && q + 0.5 > hi) {
      const double e = std::max(q - 0.5, lo);
      add(F(k, q) - integral(k, e, hi));
      hi = e;
      q -= 1.0;
    }
    if (p > q) {
      add(-integral(k, lo, hi));
      return true;
    }
    if (p - 0.5 > lo) add(-integral(k, lo, p - 0.5));
    if (q + 0.5 < hi) add(-integral(k, q + 0.5, hi));
    group(k, p, q);
    return true;
  }

  double value() const { return hit_zero_ ? -std::numeric_limits<double>::infinity() : sum_.value(); }

 private:
  void add(double v) {
    if (std::isinf(v) && v < 0.0) hit_zero_ = true;
    else sum_.add(v);
  }

  double theta_at(std::size_t k, double nu) const {
    return mu_.theta_of_mass(k, nu - mu_.panels()[k].mass_before);
  }
  double x_at(std::size_t k, double nu) const {
    return mu_.panels()[k].panel.t_of_s(std::cos(theta_at(k, nu)));
  }
  double F(std::size_t k, double nu) const { return log_factor(z_, x_at(k, nu)); }

  // dF/dnu = h'(x) dx/dnu
  double dF(std::size_t k, double nu) const {
    const double th = theta_at(k, nu);
    const double dens = mu_.density_dt(k, th);
    if (!(dens > 0.0) || !std::isfinite(dens)) return 0.0;
    const double t = mu_.panels()[k].panel.t_of_s(std::cos(th));
    return (-z_ / (t * (t + z_))).real() / dens;
  }

  bool far(double Ta, double Tb) const { return dist_to_segment(w_, Ta, Tb) >= (Tb - Ta); }

  double smooth_integral(std::size_t k, double A, double B) const {
    const auto& pm = mu_.panels()[k];
    const double tha = theta_at(k, A), thb = theta_at(k, B);
    const auto& gl = gauss_legendre(16);
    const double mid = 0.5 * (tha + thb), half = 0.5 * (tha - thb);
    CompensatedSum acc;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double th = mid + half * gl.x[i];
      double mass, g;
      mass_and_density(pm.coef, th, mass, g);
      acc.add(gl.w[i] * half * g * log_factor(z_, pm.panel.t_of_s(std::cos(th))));
    }
    return acc.value();
  }

  // Integral over a short mass range near w: the log singularity is removed analytically.
  double near_integral(std::size_t k, double A, double B) const {
    const auto& pm = mu_.panels()[k];
    const double Ta = x_at(k, A), Tb = x_at(k, B);
    const double rw = w_.real();
    double c0 = rw <= Ta ? A : (rw >= Tb ? B : pm.mass_before +
                                              panel_mass_below(pm.coef, std::acos(pm.panel.s_of_t(rw))));
    c0 = std::clamp(c0, A, B);
    const double th0 = theta_at(k, c0);
    const double x0 = pm.panel.t_of_s(std::cos(th0));
    const double xp = 1.0 / mu_.density_dt(k, th0);
    const double L = B - A;
    const double inner_lo = pm.mass_before + 1e-9 * pm.mass, inner_hi = pm.mass_before + pm.mass * (1 - 1e-9);
    if (std::isfinite(xp) && xp > 0.0 && c0 > inner_lo && c0 < inner_hi) {
      const cplx kappa = (c0 - A) + (w_ - x0) / xp;
      const double logxp = std::log(xp);
      auto R = [&](double s) {
        const cplx d = s - kappa;
        const double v = F(k, A + s);
        if (std::abs(d) < 1e-7 || !std::isfinite(v)) return logxp - std::log(x0);
        return v - std::log(std::abs(d));
      };
      const double smooth = graded_gl(R, 0.0, L, std::clamp(kappa.real(), 0.0, L), 1e-4);
      return smooth + log_antiderivative(cplx(L, 0.0) - kappa) - log_antiderivative(-kappa);
    }
    return graded_gl([&](double s) { return std::max(F(k, A + s), -700.0); }, 0.0, L, c0 - A, 1e-13);
  }

  double integral(std::size_t k, double A, double B) const {
    if (!(B > A)) return 0.0;
    const double Ta = x_at(k, A), Tb = x_at(k, B);
    if (far(Ta, Tb)) return smooth_integral(k, A, B);
    if (B - A > 32.0) {
      const double m = 0.5 * (A + B);
      return integral(k, A, m) + integral(k, m, B);
    }
    return near_integral(k, A, B);
  }

  void group(std::size_t k, double p, double q) {
    if (q - p + 1.0 <= 24.0) {
      CompensatedSum s;
      for (double n = p; n <= q; n += 1.0) {
        const double v = F(k, n);
        if (std::isinf(v)) {
          hit_zero_ = true;
          return;
        }
        s.add(v);
      }
      s.add(-integral(k, p - 0.5, q + 0.5));
      add(s.value());
      return;
    }
    const double a = p - 0.5, b = q + 0.5;
    if (far(x_at(k, a), x_at(k, b))) {
      // midpoint Euler-Maclaurin: sum F(n) - integral = -(F'(b) - F'(a)) / 24
      add(-(dF(k, b) - dF(k, a)) / 24.0);
      return;
    }
    const double mid = std::floor(0.5 * (p + q));
    group(k, p, mid);
    group(k, mid + 1.0, q);
  }

  const ContinuumMeasure& mu_;
  cplx z_, w_;
  CompensatedSum sum_;
  bool hit_zero_ = false;
};

}  // namespace

ContinuumMeasure::ContinuumMeasure(const HarmonicApprox& h) {
  double before = 0.0;
  for (const auto& p : h.measure.panels) {
    PanelModel pm;
    pm.panel = p;
    pm.coef = density_coefficients(p, h.measure.weights.data() + p.offset);
    pm.mass = kPi * pm.coef[0];
    pm.mass_before = before;
    before += pm.mass;
    panels_.push_back(std::move(pm));
  }
  total_ = before;
}

double ContinuumMeasure::cumulative(double t) const {
  double acc = 0.0;
  for (const auto& pm : panels_) {
    if (t >= pm.panel.hi) {
      acc = pm.mass_before + pm.mass;
      continue;
    }
    if (t > pm.panel.lo) {
      const double th = std::acos(pm.panel.s_of_t(t));
      acc = pm.mass_before + panel_mass_below(pm.coef, th);
    }
    break;
  }
  return acc;
}

std::size_t ContinuumMeasure::panel_of(double nu) const {
  auto it = std::lower_bound(panels_.begin(), panels_.end(), nu,
                             [](const PanelModel& pm, double v) { return pm.mass_before + pm.mass < v; });
  if (it == panels_.end()) throw DomainError("mass level beyond the total mass");
  return std::size_t(it - panels_.begin());
}

double ContinuumMeasure::theta_of_mass(std::size_t k, double m) const {
  const auto& pm = panels_[k];
  if (m <= 0.0) return kPi;
  if (m >= pm.mass) return 0.0;
  double lo = 0.0, hi = kPi;  // mass(lo) >= m >= mass(hi)
  double th = kPi * (1.0 - m / pm.mass);
  for (int it = 0; it < 100; ++it) {
    double mass, g;
    mass_and_density(pm.coef, th, mass, g);
    const double f = mass - m;
    if (f > 0.0) lo = th;
    else hi = th;
    double next = g > 0.0 ? th + f / g : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - th) <= 1e-15 * kPi || hi - lo <= 1e-15 * kPi) return next;
    th = next;
  }
  return th;
}

double ContinuumMeasure::density_dt(std::size_t k, double th) const {
  const auto& pm = panels_[k];
  const double s = std::sin(th);
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  double mass, g;
  mass_and_density(pm.coef, th, mass, g);
  return g / (s * pm.panel.dt_ds(std::cos(th)));
}

double ContinuumMeasure::quantile(double nu) const {
  if (!(nu > 0.0) || nu > total_) throw DomainError("quantile level outside (0, total]");
  const std::size_t k = panel_of(nu);
  const auto& pm = panels_[k];
  const double t = pm.panel.t_of_s(std::cos(theta_of_mass(k, nu - pm.mass_before)));
  return std::clamp(t, pm.panel.lo, pm.panel.hi);
}

ZeroSequence::ZeroSequence(const std::vector<double>& sorted) {
  for (double x : sorted) {
    if (!(x > 0.0)) throw InvalidSpec("zeros must be positive");
    if (!x_.empty() && x < x_.back()) throw InvalidSpec("zeros must be nondecreasing");
    if (!x_.empty() && x == x_.back()) {
      ++mult_.back();
    } else {
      x_.push_back(x);
      mult_.push_back(1);
    }
  }
  std::uint64_t c = 0;
  for (auto m : mult_) cum_.push_back(c += m);
  count_ = c;
}

ZeroSequence::ZeroSequence(std::shared_ptr<const ContinuumMeasure> mu) : mu_(std::move(mu)) {
  const double total = std::floor(mu_->total());
  count_ = total < 1.8e19 ? std::uint64_t(total) : std::numeric_limits<std::uint64_t>::max();
  for (const auto& pm : mu_->panels())
    if (pm.mass_before + pm.mass < kExactMass) resolved_ = std::uint64_t(std::floor(pm.mass_before + pm.mass));
}

double ZeroSequence::zero(std::uint64_t n) const {
  if (n < 1 || n > count_) throw DomainError("zero index out of range");
  if (mu_) return mu_->quantile(double(n));
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), n);
  return x_[std::size_t(it - cum_.begin())];
}

ZeroSequence discretize(const HarmonicApprox& h) {
  auto mu = std::make_shared<const ContinuumMeasure>(h);
  if (mu->total() < 1.0) std::clog << "warning: total Riesz mass below one, no zeros placed\n";
  return ZeroSequence(std::move(mu));
}

ZeroSequence discretize_cumulative(const std::function<double(double)>& mu, double t_max) {
  std::vector<double> xs;
  const double total = mu(t_max);
  for (double n = 1.0; n <= total; n += 1.0) {
    double lo = 0.0, hi = t_max;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double m = 0.5 * (lo + hi);
      if (mu(m) >= n) hi = m;
      else lo = m;
    }
    xs.push_back(hi);
  }
  return ZeroSequence(xs);
}

EntireProduct make_product(std::shared_ptr<const HarmonicApprox> h, bool continuum) {
  EntireProduct f;
  f.zeros = continuum ? ZeroSequence() : discretize(*h);
  f.log_C = h->u0;
  f.continuum = continuum;
  f.source = std::move(h);
  return f;
}

double on_support_u(const HarmonicApprox& h, cplx z) {
  // u vanishes identically on E; the sum would only return roundoff there
  if (z.imag() == 0.0 && z.real() < 0.0 && h.support.contains(-z.real())) return 0.0;
  return eval_u(h, z);
}

double log_f_minus_u(const EntireProduct& f, cplx z) {
  if (f.continuum) return 0.0;
  const ZeroSequence& zs = f.zeros;
  if (!zs.implicit()) {
    if (!f.source) throw DomainError("explicit zero list has no reference potential");
    return log_abs_f(f, z) - eval_u(*f.source, z);
  }
  if (!f.source) throw DomainError("implicit zero sequence needs its potential");
  Difference diff(*zs.measure(), z);
  const double first = double(f.skip) + 1.0;
  for (std::size_t k = 0; k < zs.measure()->panels().size(); ++k) diff.panel(k, first);
  const double d = diff.value();
  return std::isinf(d) ? d : d + f.log_C - f.source->u0;
}

double log_abs_f(const EntireProduct& f, cplx z) {
  if (f.continuum) return eval_u(*f.source, z);
  const ZeroSequence& zs = f.zeros;
  if (!zs.implicit()) {
    CompensatedSum s;
    s.add(f.log_C);
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < zs.distinct().size(); ++i) {
      const std::uint64_t m = zs.multiplicity()[i];
      const std::uint64_t lo = seen + 1;
      seen += m;
      if (seen <= f.skip) continue;
      const std::uint64_t used = seen - std::max(lo - 1, f.skip);
      const double v = log_factor(z, zs.distinct()[i]);
      if (std::isinf(v)) return -std::numeric_limits<double>::infinity();
      s.add(double(used) * v);
    }
    return s.value();
  }
  return log_f_minus_u(f, z) + on_support_u(*f.source, z);
}

double min_modulus(const EntireProduct& f, double r) { return log_abs_f(f, cplx(-r, 0.0)); }
double max_modulus(const EntireProduct& f, double r) { return log_abs_f(f, cplx(r, 0.0)); }

EntireProduct shifted_variant(const EntireProduct& f, std::uint64_t k) {
  if (f.continuum) throw DomainError("continuum mode has no zeros to drop");
  if (k >= f.zeros.count()) throw DomainError("cannot drop all zeros");
  EntireProduct g = f;
  g.skip = k;
  g.log_C = 0.0;
  return g;
}

ApproxErrorReport approx_error(const EntireProduct& f, const HarmonicApprox& h,
                               const std::vector<cplx>& grid, double r_min) {
  if (!(r_min > 1.0)) throw DomainError("approx_error requires r_min > 1");
  ApproxErrorReport rep;
  rep.C_fit = -std::numeric_limits<double>::infinity();
  for (const cplx z : grid) {
    const double az = std::abs(z);
    if (!(az > r_min)) continue;
    if (!in_D1(h.support, z)) {
      ++rep.rejected;
      continue;
    }
    ErrorSample s;
    s.z = z;
    s.u = eval_u(h, z);
    if (f.zeros.implicit() && f.source) {
      s.diff = log_f_minus_u(f, z);
      s.logf = s.u + s.diff;
    } else {
      s.logf = log_abs_f(f, z);
      s.diff = s.logf - s.u;
    }
    const double L = std::log(az);
    rep.sup_ratio = std::max(rep.sup_ratio, std::abs(s.diff) / L);
    rep.C_fit = std::max(rep.C_fit, std::abs(s.diff) - 3.0 * L);
    if (!(s.logf <= s.u + 4.0 * L)) {
      ++rep.violations;
      rep.R_emp = std::max(rep.R_emp, az);
    }
    rep.samples.push_back(s);
  }
  return rep;
}

PositivityResult positivity_set(const EntireProduct& f, const std::vector<double>& radii) {
  if (radii.size() < 2) throw DomainError("positivity_set needs at least two radii");
  auto A = [&](double r) { return min_modulus(f, r); };
  std::vector<Interval> out;
  double start = 0.0;
  bool in = A(radii[0]) > 0.0;
  if (in) start = radii[0];
  for (std::size_t i = 1; i < radii.size(); ++i) {
    const bool now = A(radii[i]) > 0.0;
    if (now == in) continue;
    double lo = radii[i - 1], hi = radii[i];
    while (hi - lo > 1e-6 * hi) {
      const double m = std::sqrt(lo * hi);
      if ((A(m) > 0.0) == in) lo = m;
      else hi = m;
    }
    const double edge = 0.5 * (lo + hi);
    if (in) out.push_back({start, edge});
    else start = edge;
    in = now;
  }
  if (in) out.push_back({start, radii.back()});
  PositivityResult res;
  res.set = IntervalSet(std::move(out), false, "positivity");
  res.density = log_densities(res.set, radii.front(), radii.back(), radii.size());
  return res;
}

void write_zero_table(std::ostream& os, const ZeroSequence& zs, std::size_t max_rows) {
  const std::uint64_t count = zs.implicit() ? zs.resolved_count() : zs.count();
  const bool sampled = count > max_rows;
  os << "# zeros count=" << count << " sampled=" << (sampled ? 1 : 0) << "\n";
  if (!zs.implicit()) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < zs.distinct().size(); ++i) {
      os << n << " " << fmt(zs.distinct()[i]) << " " << zs.multiplicity()[i] << "\n";
      n += zs.multiplicity()[i];
    }
    return;
  }
  std::vector<std::uint64_t> idx;
  if (!sampled) {
    for (std::uint64_t n = 1; n <= count; ++n) idx.push_back(n);
  } else {
    for (std::uint64_t n = 1; n <= 1000; ++n) idx.push_back(n);
    for (double v : logspace(1001.0, double(count), max_rows / 10))
      idx.push_back(std::uint64_t(std::llround(v)));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    while (!idx.empty() && idx.back() > count) idx.pop_back();
  }
  std::size_t i = 0;
  while (i < idx.size()) {
    const double x = zs.zero(idx[i]);
    std::uint64_t mult = 1;
    std::size_t j = i + 1;
    // consecutive indices landing on the same double form one multiple zero
    while (j < idx.size() && idx[j] == idx[j - 1] + 1 && zs.zero(idx[j]) == x) {
      ++mult;
      ++j;
    }
    os << idx[i] << " " << fmt(x) << " " << mult << "\n";
    i = j;
  }
}

std::vector<ZeroRow> read_zero_table(std::istream& is) {
  std::vector<ZeroRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ZeroRow r;
    if (!(ls >> r.n >> r.x >> r.multiplicity))
      throw InvalidSpec("zero table line " + std::to_string(lineno) + ": expected 'n x mult'");
    rows.push_back(r);
  }
  return rows;
}

CheckRecord verify_zero_table(const std::vector<ZeroRow>& rows, const HarmonicApprox& h) {
  CheckRecord c;
  c.name = "zero_table";
  c.margin = std::numeric_limits<double>::infinity();
  const ContinuumMeasure mu(h);
  std::string first_bad;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    ++c.samples;
    bool ok = true;
    const double tol = 1e-12 * r.x;
    if (!(dist_to_E(h.support, cplx(-r.x, 0.0)) <= tol)) ok = false;
    if (i > 0 && !(r.x > rows[i - 1].x && r.n > rows[i - 1].n)) ok = false;
    const double dev = std::abs(mu.cumulative(r.x) - double(r.n));
    const double slack = 1.0 + 1e-9 * double(r.n) - dev;
    if (!(slack >= 0.0)) ok = false;
    c.margin = std::min(c.margin, slack);
    if (!ok) {
      ++c.violations;
      if (first_bad.empty()) first_bad = "first bad row n=" + std::to_string(r.n);
    }
  }
  c.passed = c.samples > 0 && c.violations == 0;
  c.detail = first_bad.empty() ? "zeros on E*, increasing, counting within one" : first_bad;
  return c;
}

void write_error_field_csv(std::ostream& os, const ApproxErrorReport& rep) {
  os << "re,im,u,logf,diff\n";
  for (const auto& s : rep.samples)
    os << fmt(s.z.real()) << "," << fmt(s.z.imag()) << "," << fmt(s.u) << "," << fmt(s.logf)
       << "," << fmt(s.diff) << "\n";
}

}  // namespace kjell
