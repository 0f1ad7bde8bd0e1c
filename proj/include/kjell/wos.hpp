#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kjell/check.hpp"
#include "kjell/interval_set.hpp"
#include "kjell/potential.hpp"

namespace kjell {

/// Axis-aligned square minus real slits, both in z coordinates.
struct WosConfig {
  cplx center;
  double half_side = 0.0;
  std::vector<Interval> slits;  ///< real segments [lo, hi] in z, clipped to the square
  double epsilon = 0.0;
  std::uint64_t n_walks = 100000;
  std::uint64_t seed = 1;
};

struct WosEstimate {
  double omega_hat = 0.0;
  double ci95 = 0.0;
  std::uint64_t walks_used = 0;
};

/// Square of side r/2 centred at -3r/2, with the slits of E = -E* inside it.
WosConfig example_config(const IntervalSet& set, double r, std::uint64_t n_walks, std::uint64_t seed);

/// -3r/2 when it lies off E, otherwise the midpoint of the closest gap,
/// or -3r/2 + ir/8 when that gap lies outside the square.
cplx example_start(const IntervalSet& set, double r);

/// Fraction of walks leaving through the square before reaching a slit.
WosEstimate wos_measure(const WosConfig& cfg, cplx start);

/// Unit cells [k, k+1] across the square each hold a slit piece of length >= 1/(2r).
CheckRecord check_capacity_condition(const IntervalSet& set, double r);

struct DecayRow {
  double r = 0.0;
  cplx start;
  double u_start = 0.0;
  double boundary_bound = 0.0;  ///< u at the farthest corner of the square, bounds u on it
  WosEstimate est;
};
/// u(start) <= boundary_bound * (omega_hat + 2 ci95) at each r with 3r within trust.
CheckRecord verify_example_decay(const HarmonicApprox& h, const std::vector<double>& radii,
                                 std::uint64_t n_walks, std::uint64_t seed,
                                 std::vector<DecayRow>* rows = nullptr);

/// Rectangle [-1, 1] x [0, 1], value 1 on the top and sides and 0 on the bottom:
/// five-point finite differences with n cells per unit length, bilinear readout.
double fd_rectangle_measure(int n, cplx z);
/// Same boundary problem by its Fourier series.
double series_rectangle_measure(cplx z, int terms = 401);

void write_wos_csv(std::ostream& os, const std::vector<DecayRow>& rows, std::uint64_t seed);

}  // namespace kjell
