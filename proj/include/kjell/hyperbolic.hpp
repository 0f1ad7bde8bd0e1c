#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kjell/check.hpp"
#include "kjell/interval_set.hpp"

namespace kjell {

/// The set with the unit slit [0, 1] adjoined (removing [-1, 0] only shrinks D).
IntervalSet normalized_for_bounds(const IntervalSet& set);

/// Log-radial distance from the circle |z| = t to E; zero when the circle meets E.
double beta_D(const IntervalSet& set, double t);

/// Pointwise hyperbolic density bound on the positive axis.
double density_upper(const IntervalSet& set, double t);

/// Union of [a/2, 2b] over the intervals of the set.
IntervalSet e_prime(const IntervalSet& set);

enum class BoundMode {
  Windowed,  ///< 1/(2t) on E', the distance term elsewhere
  Minimum,   ///< pointwise minimum of both terms
};

/// Upper bound for the hyperbolic distance from 1 to r, r > 1.
double rho_upper(const IntervalSet& set, double r, BoundMode mode = BoundMode::Minimum);

/// Fraction of [0, log r] where the distance term is the active bound.
double active_bound_fraction(const IntervalSet& set, double r);

struct BoundRow {
  double r = 0.0;
  double rho_upper = 0.0;
  double active_bound_fraction = 0.0;
};
using BoundProfile = std::vector<BoundRow>;

BoundProfile bound_profile(const IntervalSet& set, const std::vector<double>& radii,
                           BoundMode mode = BoundMode::Minimum);
void write_bound_profile_csv(std::ostream& os, const BoundProfile& p);

/// log(u(r)/u(1)) <= rho_upper(r) + 1e-6 at every sample radius.
CheckRecord harnack_check(const std::function<double(double)>& u_on_positive_axis,
                          const IntervalSet& support, const std::vector<double>& radii,
                          BoundMode mode = BoundMode::Minimum);

}  // namespace kjell
