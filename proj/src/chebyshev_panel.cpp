#include "kjell/chebyshev_panel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kjell {

namespace {

constexpr double kPi = std::numbers::pi;

// log|(e^d - 1) / d| for complex d.
double log_abs_expm1_ratio(cplx d) {
  const double ad = std::abs(d);
  if (ad < 0.1) {
    cplx term = 1.0, sum = 1.0;
    for (int k = 2; k <= 10; ++k) {
      term *= d / double(k);
      sum += term;
    }
    return std::log(std::abs(sum));
  }
  if (d.real() > 30.0) return d.real() + std::log(std::abs(1.0 - std::exp(-d))) - std::log(ad);
  return std::log(std::abs(std::exp(d) - 1.0)) - std::log(ad);
}

// log|1 + z/t| with care for |z/t| small.
inline double log_abs_one_plus(cplx z, double t) {
  const double qr = z.real() / t, qi = z.imag() / t;
  const double q2 = qr * qr + qi * qi;
  if (q2 < 0.25) return 0.5 * std::log1p(2.0 * qr + q2);
  return 0.5 * std::log((1.0 + qr) * (1.0 + qr) + qi * qi);
}

// K_j(zeta) = log(|Phi|/2) - sum_{k<n} (2/k) Re(Phi^-k) T_k(s_j) for all j.
void near_log_kernel(const Panel& p, cplx phi, double* out) {
  const int n = p.n;
  thread_local std::vector<double> a;
  a.assign(n, 0.0);
  const cplx q = 1.0 / phi;
  cplx qk = 1.0;
  for (int k = 1; k < n; ++k) {
    qk *= q;
    a[k] = 2.0 / k * qk.real();
  }
  const double base = std::log(std::abs(phi) / 2.0);
  for (int j = 0; j < n; ++j) {
    const double s = p.s(j);
    // Clenshaw for sum_{k>=1} a_k T_k(s)
    double b1 = 0.0, b2 = 0.0;
    for (int k = n - 1; k >= 1; --k) {
      const double b0 = a[k] + 2.0 * s * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    const double sum = s * b1 - b2;
    out[j] = base - sum;
  }
}

}  // namespace

Panel Panel::make(double lo, double hi, PanelMap map, int n, int offset) {
  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.map = map;
  p.n = n;
  p.offset = offset;
  if (map == PanelMap::Log) {
    p.c = 0.5 * (std::log(lo) + std::log(hi));
    p.h = 0.5 * (std::log(hi) - std::log(lo));
  } else {
    p.c = 0.5 * (lo + hi);
    p.h = 0.5 * (hi - lo);
    p.log_ref.resize(n);
    if (lo == 0.0) {
      near_log_kernel(p, cplx(-1.0, 0.0), p.log_ref.data());
      for (auto& v : p.log_ref) v += std::log(p.h);
    } else {
      for (int j = 0; j < n; ++j) p.log_ref[j] = std::log(p.t_of_s(p.s(j)));
    }
  }
  return p;
}

double Panel::t_of_s(double s) const {
  if (s <= -1.0) return lo;
  if (s >= 1.0) return hi;
  return map == PanelMap::Log ? std::exp(c + h * s) : c + h * s;
}

double Panel::s_of_t(double t) const {
  const double s = map == PanelMap::Log ? (std::log(t) - c) / h : (t - c) / h;
  return std::clamp(s, -1.0, 1.0);
}

double Panel::dt_ds(double s) const { return map == PanelMap::Log ? h * t_of_s(s) : h; }

double Panel::theta(int j) const { return (2.0 * (n - 1 - j) + 1.0) * kPi / (2.0 * n); }

double Panel::s(int j) const { return std::cos(theta(j)); }

cplx Panel::zeta(cplx z) const {
  const cplx w = -z;
  if (map == PanelMap::Log) return (std::log(w) - c) / h;
  return (w - c) / h;
}

double Panel::near_radius() const { return std::exp(24.0 / n); }

bool Panel::certainly_far(cplx z, double log_abs_w) const {
  const double R = near_radius();
  const double semi = 0.5 * (R + 1.0 / R);
  if (map == PanelMap::Log) {
    // |zeta| >= |Re zeta| = |log|w| - c| / h
    return std::abs(log_abs_w - c) > semi * h;
  }
  return std::abs(-z - c) > semi * h;
}

std::vector<double> chebyshev_roots(int n) {
  Panel p;
  p.n = n;
  std::vector<double> s(n);
  for (int j = 0; j < n; ++j) s[j] = p.s(j);
  return s;
}

cplx joukowski_phi(cplx zeta) {
  const cplx phi = zeta + std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);
  return std::abs(phi) >= 1.0 ? phi : 1.0 / phi;
}

void panel_kernel_row(const Panel& p, const double* t, cplx z, double log_abs_w, double* out) {
  if (!p.certainly_far(z, log_abs_w)) {
    const cplx zeta = p.zeta(z);
    const cplx phi = joukowski_phi(zeta);
    if (std::abs(phi) < p.near_radius()) {
      near_log_kernel(p, phi, out);
      const double logh = std::log(p.h);
      if (p.map == PanelMap::Log) {
        for (int j = 0; j < p.n; ++j) {
          const cplx delta = p.h * (zeta - p.s(j));
          out[j] += logh + log_abs_expm1_ratio(delta);
        }
      } else {
        for (int j = 0; j < p.n; ++j) out[j] += logh - p.log_ref[j];
      }
      return;
    }
  }
  if (p.map == PanelMap::Linear) {
    for (int j = 0; j < p.n; ++j) out[j] = std::log(std::abs(t[j] + z)) - p.log_ref[j];
    return;
  }
  if (z.imag() == 0.0) {
    const double x = z.real();
    for (int j = 0; j < p.n; ++j) {
      const double q = x / t[j];
      out[j] = std::abs(q) < 0.5 ? std::log1p(q) : std::log(std::abs(1.0 + q));
    }
    return;
  }
  for (int j = 0; j < p.n; ++j) out[j] = log_abs_one_plus(z, t[j]);
}

double panel_potential(const Panel& p, const double* t, const double* m, cplx z, double log_abs_w) {
  thread_local std::vector<double> row;
  row.resize(p.n);
  panel_kernel_row(p, t, z, log_abs_w, row.data());
  double s = 0.0;
  for (int j = 0; j < p.n; ++j) s += m[j] * row[j];
  return s;
}

std::vector<double> density_coefficients(const Panel& p, const double* m) {
  // g(s_j) = n m_j / pi; interpolation coefficients at Chebyshev roots.
  std::vector<double> a(p.n, 0.0);
  for (int k = 0; k < p.n; ++k) {
    double s = 0.0;
    for (int j = 0; j < p.n; ++j) s += m[j] * std::cos(k * p.theta(j));
    a[k] = (k == 0 ? 1.0 : 2.0) * s / kPi;
  }
  return a;
}

double panel_mass_below(const std::vector<double>& a, double th) {
  // integral over phi in [th, pi] of sum_k a_k cos(k phi)
  double s = a[0] * (kPi - th);
  for (std::size_t k = 1; k < a.size(); ++k) s -= a[k] * std::sin(k * th) / double(k);
  return s;
}

double panel_density(const std::vector<double>& a, double th) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::cos(k * th);
  return s;
}

}  // namespace kjell
