#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kjell {

using cplx = std::complex<double>;

/// Closed interval [lo, hi] of the positive ray; lo == hi is a degenerate point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate() const { return hi == lo; }
  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Open gap (c, d) between consecutive intervals.
struct Gap {
  double c = 0.0;
  double d = 0.0;
};

/// Mirror image E* of a closed set E on the negative real axis.
///
/// Stored sorted with pairwise disjoint, non-touching intervals. Touching or
/// overlapping input is merged and `merged()` reports it.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::vector<Interval> intervals, bool includes_origin, std::string label = {});

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  bool includes_origin() const { return includes_origin_; }
  bool merged() const { return merged_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Gaps between consecutive intervals: c_n = hi_n, d_n = lo_{n+1}.
  std::vector<Gap> gaps() const;
  /// True when t lies in E* (the origin counts when included).
  bool contains(double t) const;
  double max_endpoint() const { return intervals_.empty() ? 0.0 : intervals_.back().hi; }
  /// Stable 64-bit FNV-1a digest of the endpoint bit patterns.
  std::uint64_t hash() const;

 private:
  std::vector<Interval> intervals_;
  bool includes_origin_ = false;
  bool merged_ = false;
  std::string label_;
};

/// Union of [beta^n, alpha beta^n] for n_min <= n <= n_max, origin included.
IntervalSet build_kjellberg(double alpha, double beta, int n_min, int n_max);
/// Union of [a_n, b_n], b_n = exp(n^2 / (4 rho)), a_n = b_n e^{-n}; rho = 0 gives b_n = exp(n^3).
IntervalSet build_corollary(double rho, int n_max);
/// Union of [n, n + 1/n] for 1 <= n <= n_max.
IntervalSet build_example_sodin(int n_max);
/// a_0 = 1, b_n = 2 a_n, a_{n+1} = b_n + b_n^p for 0 <= n <= n_max.
IntervalSet build_thick(double p, int n_max);

/// Integral of dt/t over E* intersected with [1, r]. Requires r > 1.
double log_integral(const IntervalSet& set, double r);
/// Signed version valid for any r > 0: negative of the integral over [r, 1] when r < 1.
double signed_log_integral(const IntervalSet& set, double r);

/// Extremes of log_integral(r) / log r over a window.
struct DensityEstimate {
  double upper = 0.0;
  double lower = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t samples = 0;
};

/// Samples log-spaced radii plus every interval endpoint inside the window.
DensityEstimate log_densities(const IntervalSet& set, double window_lo, double window_hi,
                              std::size_t samples);

/// Complement of E* inside [1, r_max], as an interval set.
IntervalSet complement_within(const IntervalSet& set, double r_max);

/// Euclidean distance from z to E (the mirror of E* on the negative axis).
double dist_to_E(const IntervalSet& set, cplx z);
/// z lies farther than 1 from E.
bool in_D1(const IntervalSet& set, cplx z);

/// Text format: one header line, then "lo hi" per interval at full precision.
void write_interval_set(std::ostream& os, const IntervalSet& set);
IntervalSet read_interval_set(std::istream& is);
IntervalSet load_interval_set(const std::string& path);
void save_interval_set(const std::string& path, const IntervalSet& set);

/// Full-precision decimal rendering used by every text artifact.
std::string fmt(double x);

}  // namespace kjell
