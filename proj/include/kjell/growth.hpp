#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "kjell/check.hpp"
#include "kjell/entire.hpp"
#include "kjell/potential.hpp"

namespace kjell {

/// Circle minimum A(r) and maximum B(r), taken at -r and r.
struct GrowthReport {
  std::vector<double> radii;
  std::vector<double> A;
  std::vector<double> B;
  std::vector<CheckRecord> checks;
};

/// Also records check "extrema": 64 angles never beat A or B (1e-9 relative).
GrowthReport profile(const HarmonicApprox& h, const std::vector<double>& radii);
GrowthReport profile(const EntireProduct& f, const std::vector<double>& radii);

/// max and min of log B(r)/log r over the window; stands in for limsup and liminf.
struct OrderFit {
  double order = 0.0;
  double lower_order = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t samples = 0;
};
OrderFit order_fit(const GrowthReport& rep, double window_lo, double window_hi);

/// log of the Beurling factor: 1/2 of the log measure of E* within [r1, r2].
double beurling_exponent(const IntervalSet& set, double r1, double r2);
/// B(r2) > exp(beurling_exponent) B(r1) / 2 at every pair; margin in log units.
CheckRecord check_beurling(const std::function<double(double)>& B, const IntervalSet& set,
                           const std::vector<std::pair<double, double>>& pairs);
/// Log-uniform random pairs 1 <= r1 < r2 <= r_max from a fixed seed.
std::vector<std::pair<double, double>> random_pairs(double r_max, std::size_t n, std::uint64_t seed);

/// Lower density >= 1 - order/alpha - 0.05 and upper >= 1 - lower_order/alpha - 0.05.
CheckRecord check_barry(const OrderFit& fit, const DensityEstimate& positivity, double alpha = 0.5);

struct MinTypeResult {
  CheckRecord record;
  double decay_factor = 0.0;  ///< (u(r)/sqrt r at window start) / (same at window end)
  std::vector<double> radii;
  std::vector<double> scaled;  ///< u(r)/sqrt(r)
};
/// u(r)/sqrt r nonincreasing on [1, trust] and the Poisson lower bound at 10 radii.
MinTypeResult check_min_type(const HarmonicApprox& h, double window_lo = 1.0);

/// (2 sqrt r / pi) * integral over gaps of u(-v^2)/(v^2 + r) dv, truncated at the trust radius.
double poisson_lower_bound(const HarmonicApprox& h, double r);

/// max/min of u on |z| = sqrt(cd) is at most exp(pi^2 / log(d/c)) for each gap.
CheckRecord check_annulus_harnack(const HarmonicApprox& h, const std::vector<Gap>& gaps,
                                  int angles = 128);
double annulus_bound(double c, double d);

/// u(re^{i th}) nonincreasing in th and u(r)/sqrt r nonincreasing in r.
CheckRecord check_theta_monotone(const HarmonicApprox& h, int n_radii, int n_angles,
                                 double slack = 1e-6);

struct Bracket {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  double rho_upper_ratio = 0.0;  ///< rho_upper(r)/log r
  double beurling_ratio = 0.0;   ///< lower bound without the log 2 term
};
/// Beurling below, hyperbolic bound above, both normalised by log r.
Bracket bracket(const HarmonicApprox& h, double r);
CheckRecord check_bracketing(const HarmonicApprox& h, double r);

/// Largest u(-s) over each gap of E*, a proxy for u(-r) that is not pinned to 0 on slits.
struct GapPeak {
  double c = 0.0;
  double d = 0.0;
  double s = 0.0;
  double value = 0.0;
};
std::vector<GapPeak> gap_peaks(const HarmonicApprox& h, double r_lo, double r_hi);
/// Gap peaks decrease on [r_lo, r_hi] and the last is below half the first.
CheckRecord check_negative_axis_decay(const HarmonicApprox& h, double r_lo, double r_hi);

void write_growth_csv(std::ostream& os, const GrowthReport& rep);

}  // namespace kjell
