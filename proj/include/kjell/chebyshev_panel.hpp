#pragma once

#include <complex>
#include <vector>

namespace kjell {

using cplx = std::complex<double>;

/// Parametrisation of one slit t in [lo, hi] by s in [-1, 1].
enum class PanelMap { Log, Linear };

/// A slit carrying a Chebyshev-weighted density g(s) / sqrt(1 - s^2).
///
/// Nodes are the n Chebyshev roots, ascending in t. A node weight is
/// m_j = (pi / n) g(s_j), so point masses and the continuum agree on
/// polynomials of degree < 2n.
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  PanelMap map = PanelMap::Log;
  int n = 0;
  int offset = 0;
  double c = 0.0;
  double h = 0.0;
  /// Linear panels: continuum reference log t per node, so log|1 + z/t| integrates
  /// to exactly 0 at z = 0 despite the endpoint singularity of log t.
  std::vector<double> log_ref;

  static Panel make(double lo, double hi, PanelMap map, int n, int offset);

  double t_of_s(double s) const;
  double s_of_t(double t) const;
  double dt_ds(double s) const;
  /// Node s_j = cos(theta_j), theta_j = (2(n-1-j)+1) pi / (2n).
  double theta(int j) const;
  double s(int j) const;
  /// Parameter of the target z: zeta with t(zeta) = -z.
  cplx zeta(cplx z) const;
  /// Cheap exclusion: true when z is certainly outside the near-field ellipse.
  bool certainly_far(cplx z, double log_abs_w) const;
  /// Bernstein radius of the ellipse outside which point masses are exact to roundoff.
  double near_radius() const;
};

/// Chebyshev roots ascending, matching Panel::s.
std::vector<double> chebyshev_roots(int n);

/// Joukowski inverse with |Phi| >= 1.
cplx joukowski_phi(cplx zeta);

/// Writes G(z; t_j) = log|1 + z/t_j| for the n nodes of p, with
/// product-integration near the slit so the continuum density is represented.
void panel_kernel_row(const Panel& p, const double* t, cplx z, double log_abs_w, double* out);

/// Sum of m_j G(z; t_j) over the panel with the same near-field treatment.
double panel_potential(const Panel& p, const double* t, const double* m, cplx z, double log_abs_w);

/// Chebyshev coefficients of g from the weights: g(cos th) = sum_k a_k cos(k th).
std::vector<double> density_coefficients(const Panel& p, const double* m);

/// Mass of the panel on t in [lo, t(cos th)], given the coefficients of g.
double panel_mass_below(const std::vector<double>& a, double th);

/// Density g(cos th) from coefficients.
double panel_density(const std::vector<double>& a, double th);

}  // namespace kjell
