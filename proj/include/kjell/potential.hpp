#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kjell/chebyshev_panel.hpp"
#include "kjell/interval_set.hpp"

namespace kjell {

/// Discretised Riesz measure: panels of Chebyshev nodes on the mirror set.
struct RieszMeasure {
  std::vector<Panel> panels;
  Eigen::VectorXd nodes;       ///< t_j, ascending
  Eigen::VectorXd weights;     ///< m_j >= 0
  Eigen::VectorXd cumulative;  ///< running sums of weights

  Eigen::Index size() const { return nodes.size(); }
  double total_mass() const { return cumulative.size() ? cumulative[cumulative.size() - 1] : 0.0; }
};

struct SolveOptions {
  int nodes_per_interval = 48;
  cplx norm_point = 1.0;
  /// Extra nodes on slits whose neighbours are close in the panel coordinate.
  bool refine_crowded = true;
  /// Hard ceiling on the number of unknowns.
  int max_unknowns = 16000;
};

struct SolveDiagnostics {
  int unknowns = 0;
  int scaling_passes = 0;
  double rcond = 0.0;
  double boundary_residual = 0.0;  ///< max |u| on E* relative to max(1, u(|t|))
  double free_u0 = 0.0;            ///< additive constant before pinning, origin-capped sets
  int clamped = 0;
  double seconds = 0.0;
};

/// u(z) = u0 + sum_j m_j log|1 + z/t_j|, normalised so u(norm_point) = 1.
struct HarmonicApprox {
  RieszMeasure measure;
  double u0 = 0.0;
  double trust_radius = 0.0;
  IntervalSet set;      ///< the requested set
  IntervalSet support;  ///< the set actually carrying mass (adds the origin cap)
  SolveDiagnostics diag;
};

/// Collocation solve for the positive harmonic function vanishing on E.
HarmonicApprox solve(const IntervalSet& set, const SolveOptions& opts = {});
HarmonicApprox solve(const IntervalSet& set, int nodes_per_interval, cplx norm_point = 1.0);

/// Evaluates u; conjugate-symmetric and finite everywhere.
double eval_u(const HarmonicApprox& h, cplx z);
/// Discrete Riesz mass on [0, r].
double mu_cumulative(const HarmonicApprox& h, double r);

/// Green's function of C minus [-b, -a] with pole at infinity.
double oracle_green_segment(double a, double b, cplx z);
/// sqrt(r) cos(theta/2): the limit for E = (-inf, 0].
double oracle_halfline(cplx z);

/// Measure table: header lines then "t m" rows at full precision.
void write_measure(std::ostream& os, const HarmonicApprox& h);
HarmonicApprox read_measure(std::istream& is);

}  // namespace kjell
