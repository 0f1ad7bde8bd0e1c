#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kjell/errors.hpp"
#include "kjell/numerics.hpp"
#include "kjell/potential.hpp"

using namespace kjell;

TEST_CASE("segment oracle values") {
  CHECK(oracle_green_segment(1, 2, 0.0) == doctest::Approx(std::log(3 + std::sqrt(8.0))).epsilon(1e-14));
  CHECK(oracle_green_segment(1, 2, 0.0) == doctest::Approx(1.76275).epsilon(1e-5));
  CHECK(oracle_green_segment(1, 2, 1.0) == doctest::Approx(2.29243).epsilon(1e-5));
  CHECK(oracle_green_segment(1, 2, -1.5) == doctest::Approx(0.0));
  CHECK(oracle_green_segment(1, 2, cplx(-1.5, 1e-9)) >= 0.0);
  CHECK_THROWS_AS(oracle_green_segment(2, 1, 0.0), DomainError);
}

TEST_CASE("half-line oracle values") {
  CHECK(oracle_halfline(4.0) == doctest::Approx(2.0));
  CHECK(oracle_halfline(-4.0) == doctest::Approx(0.0));
  CHECK(oracle_halfline(cplx(0, 4)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("single segment matches the Joukowski oracle") {
  const IntervalSet s({{1, 2}}, false);
  const auto t0 = std::chrono::steady_clock::now();
  const auto h = solve(s, 64);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);
  const double g1 = oracle_green_segment(1, 2, 1.0);
  CHECK(eval_u(h, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(eval_u(h, 0.0) == doctest::Approx(0.76894).epsilon(1e-3));
  CHECK(eval_u(h, 0.0) == doctest::Approx(std::log(3 + std::sqrt(8.0)) / std::log(5 + std::sqrt(24.0))).epsilon(1e-10));
  CHECK(std::abs(eval_u(h, -1.5)) < 1e-10);
  double worst = 0.0;
  for (int k = 0; k < 40; ++k) {
    const cplx z = std::polar(0.1 + 0.25 * k, 0.37 * k);
    const double want = oracle_green_segment(1, 2, z) / g1;
    worst = std::max(worst, std::abs(eval_u(h, z) - want));
  }
  CHECK(worst < 1e-10);
  CHECK(h.diag.boundary_residual < 1e-10);
  CHECK(h.trust_radius == doctest::Approx(0.2));
}

TEST_CASE("evaluation is conjugate symmetric and finite on nodes") {
  const auto h = solve(build_kjellberg(2, 4, -3, 3), 16);
  for (double th : {0.3, 1.2, 2.9}) {
    const cplx z = std::polar(5.0, th);
    CHECK(eval_u(h, z) == doctest::Approx(eval_u(h, std::conj(z))).epsilon(1e-14));
  }
  for (Eigen::Index j = 0; j < h.measure.size(); j += 7) {
    const double v = eval_u(h, cplx(-h.measure.nodes[j], 0.0));
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) < 1e-8);
  }
  CHECK(std::abs(h.diag.free_u0) < 1e-6);
}

namespace {

// circle mean of u at radius r by the trapezoid rule
double circle_mean(const HarmonicApprox& h, double r) {
  const int n = 4096;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += eval_u(h, std::polar(r, 2.0 * std::numbers::pi * (k + 0.5) / n));
  return s / n;
}

}  // namespace

TEST_CASE("discrete cumulative follows r I'(r)") {
  const IntervalSet s({{1e-3, 1e4}}, false);
  const auto h = solve(s, 48);
  for (double r : {3.0, 5.0, 10.0}) {
    const double e = 1e-3;
    const double dI = (circle_mean(h, r * std::exp(e)) - circle_mean(h, r * std::exp(-e))) / (2 * e);
    CHECK(mu_cumulative(h, r) == doctest::Approx(dI).epsilon(0.02));
    // half-line density sqrt(t)/pi, up to the normalisation u(1) = 1
    CHECK(mu_cumulative(h, r) == doctest::Approx(std::sqrt(r) / std::numbers::pi).epsilon(0.02));
  }
  CHECK(mu_cumulative(h, 1e-4) == 0.0);
}

TEST_CASE("half-line approximation") {
  const IntervalSet s({{1e-3, 1e4}}, false);
  const auto h = solve(s, 48);
  for (double r : {1.0, 4.0, 30.0, 100.0})
    for (double th : {0.0, 0.25 * std::numbers::pi, 0.5 * std::numbers::pi, 0.75 * std::numbers::pi}) {
      const cplx z = std::polar(r, th);
      CHECK(eval_u(h, z) == doctest::Approx(oracle_halfline(z) / oracle_halfline(1.0)).epsilon(0.05));
    }
}

TEST_CASE("invalid solver input") {
  CHECK_THROWS_AS(solve(IntervalSet({{1, 2}}, false), 3), InvalidSpec);
  CHECK_THROWS_AS(solve(IntervalSet({{1, 2}}, false), 8, cplx(-1.5, 0)), DomainError);
  CHECK_THROWS_AS(solve(IntervalSet({{3, 3}}, false), 8), InvalidSpec);
}

TEST_CASE("measure round trip") {
  const auto h = solve(build_corollary(0.25, 5), 16);
  std::stringstream ss;
  write_measure(ss, h);
  const auto g = read_measure(ss);
  CHECK(g.set.hash() == h.set.hash());
  CHECK(g.u0 == h.u0);
  for (cplx z : {cplx(3, 1), cplx(-50, 2), cplx(1e4, 0)})
    CHECK(eval_u(g, z) == eval_u(h, z));
}

TEST_CASE("trust radius against a longer truncation") {
  // extending the set four periods past the trust radius moves u by a few percent at most
  const auto a = solve(build_kjellberg(2, 4, -10, 10), 48);
  const auto b = solve(build_kjellberg(2, 4, -10, 14), 48);
  double worst = 0.0, inner = 0.0;
  for (double r : logspace(1.0, a.trust_radius, 40)) {
    for (double th : {0.0, 1.0, 2.0, 3.0}) {
      const cplx z = std::polar(r, th);
      const double e = std::abs(eval_u(a, z) - eval_u(b, z)) / eval_u(b, z);
      worst = std::max(worst, e);
      if (r <= std::sqrt(a.trust_radius)) inner = std::max(inner, e);
    }
  }
  CHECK(worst < 0.06);
  CHECK(inner < 1e-3);
}
