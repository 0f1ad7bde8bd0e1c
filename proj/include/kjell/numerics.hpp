#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace kjell {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// n points geometrically spaced on [a, b], endpoints included.
std::vector<double> logspace(double a, double b, std::size_t n);

/// n points evenly spaced on [a, b], endpoints included.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

/// Adaptive Simpson on [a, b] to an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

/// Adaptive Simpson over consecutive breakpoints, tolerance shared by length.
double adaptive_simpson_pieces(const std::function<double(double)>& f,
                               std::vector<double> breaks, double abs_tol, int max_depth = 48);

}  // namespace kjell
