#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "kjell/check.hpp"
#include "kjell/interval_set.hpp"
#include "kjell/potential.hpp"

namespace kjell {

/// Continuous Riesz measure recovered from the Chebyshev weights of each panel.
class ContinuumMeasure {
 public:
  struct PanelModel {
    Panel panel;
    std::vector<double> coef;  ///< g(cos th) = sum coef[k] cos(k th)
    double mass_before = 0.0;
    double mass = 0.0;
  };

  explicit ContinuumMeasure(const HarmonicApprox& h);

  double total() const { return total_; }
  const std::vector<PanelModel>& panels() const { return panels_; }
  /// mu([0, t]).
  double cumulative(double t) const;
  /// inf{t : mu([0, t]) >= nu}, 0 < nu <= total.
  double quantile(double nu) const;
  /// Panel index holding mass level nu.
  std::size_t panel_of(double nu) const;
  /// Angle th in [0, pi] where the panel mass below t(cos th) equals m.
  double theta_of_mass(std::size_t k, double m) const;
  /// Density of mu with respect to t at angle th of panel k.
  double density_dt(std::size_t k, double th) const;

 private:
  std::vector<PanelModel> panels_;
  double total_ = 0.0;
};

/// Zeros x_1 <= x_2 <= ... of the canonical product.
///
/// Either an explicit strictly increasing list with multiplicities, or the
/// implicit quantile sequence x_n = inf{t : mu(t) >= n} of a continuum measure.
class ZeroSequence {
 public:
  ZeroSequence() = default;
  /// Explicit list; equal neighbours merge into one entry with multiplicity.
  explicit ZeroSequence(const std::vector<double>& sorted_zeros);
  explicit ZeroSequence(std::shared_ptr<const ContinuumMeasure> mu);

  bool implicit() const { return bool(mu_); }
  /// Number of zeros counted with multiplicity.
  std::uint64_t count() const { return count_; }
  /// Zeros whose index is an exact double; the rest are treated as continuum.
  std::uint64_t resolved_count() const { return resolved_; }
  /// n-th zero, 1-based, counted with multiplicity.
  double zero(std::uint64_t n) const;
  const std::vector<double>& distinct() const { return x_; }
  const std::vector<std::uint64_t>& multiplicity() const { return mult_; }
  const ContinuumMeasure* measure() const { return mu_.get(); }

 private:
  std::vector<double> x_;
  std::vector<std::uint64_t> mult_;
  std::vector<std::uint64_t> cum_;
  std::shared_ptr<const ContinuumMeasure> mu_;
  std::uint64_t count_ = 0;
  std::uint64_t resolved_ = 0;
};

/// f(z) = exp(log_C) prod_{n > skip} (1 + z/x_n), or exp(u) in continuum mode.
struct EntireProduct {
  ZeroSequence zeros;
  double log_C = 0.0;
  std::uint64_t skip = 0;
  bool continuum = false;
  std::shared_ptr<const HarmonicApprox> source;
};

/// Zeros at the integer levels of the continuum Riesz measure; log_C = u0.
ZeroSequence discretize(const HarmonicApprox& h);
/// Zeros from an increasing cumulative function on [0, t_max] by bisection.
ZeroSequence discretize_cumulative(const std::function<double(double)>& mu, double t_max);
EntireProduct make_product(std::shared_ptr<const HarmonicApprox> h, bool continuum = false);

/// log|f(z)|; -infinity exactly at a zero.
///
/// Implicit sequences evaluate u plus the sum-minus-integral difference, so the
/// result stays accurate when u is large. Panels whose cumulative mass exceeds
/// 2^53 cannot index single zeros and contribute as continuum.
double log_abs_f(const EntireProduct& f, cplx z);
/// log|f(z)| - u(z) computed without forming either term.
double log_f_minus_u(const EntireProduct& f, cplx z);
/// u(z), returning exactly 0 on E.
double on_support_u(const HarmonicApprox& h, cplx z);
double min_modulus(const EntireProduct& f, double r);
double max_modulus(const EntireProduct& f, double r);
/// Drops the first k zeros and sets C = 1.
EntireProduct shifted_variant(const EntireProduct& f, std::uint64_t k);

struct ErrorSample {
  cplx z;
  double u = 0.0;
  double logf = 0.0;
  double diff = 0.0;
};

struct ApproxErrorReport {
  double sup_ratio = 0.0;  ///< sup |log|f| - u| / log|z|
  double C_fit = 0.0;      ///< smallest C with |log|f| - u| <= 3 log|z| + C
  std::size_t violations = 0;  ///< log|f| > u + 4 log|z|
  double R_emp = 0.0;      ///< largest |z| of a violation, 0 if none
  std::size_t rejected = 0;    ///< grid points outside D_1
  std::vector<ErrorSample> samples;
};

/// Compares log|f| against u on grid points of D_1 with |z| > r_min > 1.
ApproxErrorReport approx_error(const EntireProduct& f, const HarmonicApprox& h,
                               const std::vector<cplx>& grid, double r_min);

struct PositivityResult {
  IntervalSet set;  ///< {r : log|f(-r)| > 0} inside the sampled window
  DensityEstimate density;
};

/// Sign changes of log|f(-r)| located to 1e-6 relative by bisection.
PositivityResult positivity_set(const EntireProduct& f, const std::vector<double>& radii);

/// Zero table "n x_n multiplicity"; sampled rows above max_rows distinct zeros.
void write_zero_table(std::ostream& os, const ZeroSequence& zs, std::size_t max_rows = 200000);
struct ZeroRow {
  std::uint64_t n = 0;
  double x = 0.0;
  std::uint64_t multiplicity = 1;
};
std::vector<ZeroRow> read_zero_table(std::istream& is);
/// Rows lie on the support, increase with n, and count within one of mu.
CheckRecord verify_zero_table(const std::vector<ZeroRow>& rows, const HarmonicApprox& h);

void write_error_field_csv(std::ostream& os, const ApproxErrorReport& rep);

}  // namespace kjell
