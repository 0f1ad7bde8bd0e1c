#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kjell/entire.hpp"
#include "kjell/errors.hpp"
#include "kjell/numerics.hpp"

using namespace kjell;

namespace {

EntireProduct explicit_product(std::vector<double> zeros, double log_C = 0.0) {
  EntireProduct f;
  f.zeros = ZeroSequence(zeros);
  f.log_C = log_C;
  return f;
}

std::shared_ptr<const HarmonicApprox> corollary(int n_max, int nodes = 24) {
  return std::make_shared<const HarmonicApprox>(solve(build_corollary(0.25, n_max), nodes));
}

}  // namespace

TEST_CASE("explicit products evaluate directly") {
  const auto one = explicit_product({1.0});
  CHECK(log_abs_f(one, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double at_zero = log_abs_f(one, -1.0);
  CHECK(std::isinf(at_zero));
  CHECK(at_zero < 0.0);

  const auto two = explicit_product({1.0, 100.0});
  CHECK(log_abs_f(two, -10.0) == doctest::Approx(std::log(8.1)).epsilon(1e-14));
  CHECK(min_modulus(two, 10.0) == doctest::Approx(2.09186).epsilon(1e-5));
  CHECK(max_modulus(two, 10.0) == doctest::Approx(2.49321).epsilon(1e-5));
  CHECK(std::isinf(min_modulus(two, 100.0)));

  const auto c = explicit_product({1.0, 100.0}, 0.7);
  CHECK(min_modulus(c, 1e-12) == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(max_modulus(c, 1e-12) == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("repeated zeros carry multiplicity") {
  const auto f = explicit_product({2.0, 2.0, 2.0, 5.0});
  CHECK(f.zeros.count() == 4);
  CHECK(f.zeros.distinct().size() == 2);
  CHECK(f.zeros.multiplicity()[0] == 3);
  CHECK(f.zeros.zero(3) == 2.0);
  CHECK(f.zeros.zero(4) == 5.0);
  CHECK(log_abs_f(f, 2.0) == doctest::Approx(3 * std::log(2.0) + std::log(1.4)).epsilon(1e-14));
  CHECK_THROWS_AS(ZeroSequence(std::vector<double>{2.0, 1.0}), InvalidSpec);
  CHECK_THROWS_AS(ZeroSequence(std::vector<double>{0.0}), InvalidSpec);
}

TEST_CASE("shifted variant drops leading factors") {
  const auto f = explicit_product({1.0, 2.0, 4.0});
  const auto g = shifted_variant(f, 1);
  CHECK(log_abs_f(g, 1.0) == doctest::Approx(std::log(1.5 * 1.25)).epsilon(1e-14));
  CHECK(log_abs_f(g, 1.0) == doctest::Approx(0.62861).epsilon(1e-5));
  const auto id = shifted_variant(f, 0);
  for (cplx z : {cplx(1, 0), cplx(-3, 2), cplx(7, -1)}) CHECK(log_abs_f(id, z) == log_abs_f(f, z));
  for (cplx z : {cplx(0.5, 0), cplx(3, 4), cplx(10, -2)}) CHECK(log_abs_f(g, z) < log_abs_f(f, z));
  CHECK_THROWS_AS(shifted_variant(f, 3), DomainError);
}

TEST_CASE("cumulative quantiles of a closed form") {
  const auto zs = discretize_cumulative([](double t) { return std::sqrt(t); }, 100.0);
  REQUIRE(zs.count() == 10);
  CHECK(zs.zero(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zs.zero(2) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(zs.zero(3) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(zs.zero(10) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("positivity set of small products") {
  const auto two = explicit_product({1.0, 100.0});
  CHECK(min_modulus(two, 10.0) > 0.0);
  const auto close = explicit_product({1.0, 1.5});
  CHECK(min_modulus(close, 1.2) == doctest::Approx(std::log(0.04)).epsilon(1e-12));
  const auto res = positivity_set(close, logspace(1.01, 1.49, 97));
  CHECK_FALSE(res.set.contains(1.2));
}

TEST_CASE("segment zeros stay on the segment and count the measure") {
  const IntervalSet seg({{1.0, 2.0}}, false, "segment");
  // normalising near E scales u up so that the segment carries many zeros
  auto h = std::make_shared<const HarmonicApprox>(solve(seg, 32, cplx(-1.5, 1e-3)));
  const auto f = make_product(h);
  const auto& zs = f.zeros;
  REQUIRE(zs.count() > 50);
  const ContinuumMeasure& mu = *zs.measure();
  for (std::uint64_t n = 1; n <= zs.count(); ++n) {
    const double x = zs.zero(n);
    CHECK(h->support.contains(x));
    if (n > 1) CHECK(x > zs.zero(n - 1));
  }
  for (double r : linspace(0.5, 2.5, 401)) {
    std::uint64_t below = 0;
    while (below < zs.count() && zs.zero(below + 1) <= r) ++below;
    CHECK(std::abs(double(below) - mu.cumulative(r)) < 1.0);
  }
}

TEST_CASE("implicit evaluation agrees with the direct product") {
  auto h = corollary(4);
  const auto f = make_product(h);
  REQUIRE(f.zeros.count() > 300);
  for (cplx z : {cplx(10, 0), cplx(-30, 5), cplx(-500, 2), cplx(-std::exp(1.5), 0.0), cplx(-std::exp(3.5), 1.5),
                 cplx(1e4, 3e3), cplx(-1.7e6, 3.0)}) {
    CompensatedSum s;
    s.add(f.log_C);
    for (std::uint64_t n = 1; n <= f.zeros.count(); ++n) s.add(std::log(std::abs(1.0 + z / f.zeros.zero(n))));
    // the gap is the quadrature difference between eval_u and the continuum density
    CHECK(std::abs(log_abs_f(f, z) - s.value()) < 1e-6);
  }
}

TEST_CASE("zero containment and counting at the slit ends") {
  auto h = corollary(5);
  const auto zs = discretize(*h);
  const ContinuumMeasure& mu = *zs.measure();
  CHECK(zs.count() == std::uint64_t(std::floor(mu.total())));
  for (const auto& iv : h->set.intervals()) {
    if (iv.degenerate()) continue;
    const auto first = std::uint64_t(std::floor(mu.cumulative(iv.lo))) + 1;
    const auto last = std::uint64_t(std::floor(mu.cumulative(iv.hi)));
    for (std::uint64_t k = first; k <= last; k = (k - first == 40 && last > k + 40) ? last - 40 : k + 1) {
      const double x = zs.zero(k);
      CHECK(h->support.contains(x));
      CHECK(mu.cumulative(x) == doctest::Approx(double(k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("circle sampling never beats the real-axis extremes") {
  auto h = corollary(4);
  const auto f = shifted_variant(make_product(h), 5);
  for (double r : {0.5, 3.0, 40.0, 2500.0, 1e6}) {
    const double mx = max_modulus(f, r), mn = min_modulus(f, r);
    for (int j = 0; j < 512; ++j) {
      const double th = 2 * std::numbers::pi * j / 512;
      const double v = log_abs_f(f, std::polar(r, th));
      const double tol = 1e-12 * std::max(1.0, std::abs(mx));
      CHECK(v <= mx + tol);
      if (std::isfinite(mn)) CHECK(v >= mn - std::max(tol, 1e-12 * std::abs(mn)));
    }
  }
}

TEST_CASE("continuum mode reproduces u and errors vanish") {
  auto h = corollary(4);
  const auto f = make_product(h, true);
  std::vector<cplx> grid;
  for (double r : logspace(3.0, 1e6, 20))
    for (double a : {0.3, 1.2, 2.5}) grid.push_back(std::polar(r, a));
  const auto rep = approx_error(f, *h, grid, 2.0);
  CHECK(rep.samples.size() + rep.rejected == grid.size());
  CHECK(rep.samples.size() > 50);
  CHECK(rep.sup_ratio == 0.0);
  CHECK(rep.violations == 0);
  CHECK_THROWS_AS(approx_error(f, *h, grid, 1.0), DomainError);
}

TEST_CASE("single segment error field") {
  const IntervalSet seg({{1.0, 2.0}}, false, "segment");
  auto h = std::make_shared<const HarmonicApprox>(solve(seg, 32, cplx(-1.5, 1e-3)));
  const auto f = make_product(h);
  std::vector<cplx> grid;
  // one slit is the exact Green's function, so no truncation limits the radius
  for (double r : logspace(10.0, 1e4, 40))
    for (int j = 0; j < 25; ++j) grid.push_back(std::polar(r, std::numbers::pi * (j + 0.5) / 25));
  REQUIRE(grid.size() == 1000);
  const auto rep = approx_error(f, *h, grid, 10.0);
  CHECK(std::isfinite(rep.C_fit));
  // |d| <= 3L + C gives |d|/L <= 3 + C/L, largest at the inner radius when C >= 0 and the outer when C < 0
  const double bound = 3.0 + std::max(rep.C_fit / std::log(10.0), rep.C_fit / std::log(1e4));
  CHECK(rep.sup_ratio <= bound + 1e-12);
  std::ostringstream os;
  write_error_field_csv(os, rep);
  CHECK(os.str().rfind("re,im,u,logf,diff\n", 0) == 0);
}

TEST_CASE("zero table round trip and corruption") {
  auto h = corollary(4);
  const auto zs = discretize(*h);
  std::stringstream ss;
  write_zero_table(ss, zs);
  const auto rows = read_zero_table(ss);
  REQUIRE(rows.size() == zs.count());
  CHECK(rows[5].x == zs.zero(6));
  const auto ok = verify_zero_table(rows, *h);
  CHECK(ok.passed);

  auto moved = rows;
  moved[100].x *= 1.7;
  CHECK_FALSE(verify_zero_table(moved, *h).passed);
  auto off = rows;
  off[200].x = 0.5 * (h->set.gaps()[1].c + h->set.gaps()[1].d);
  CHECK_FALSE(verify_zero_table(off, *h).passed);

  std::stringstream bad("# zeros\n1 2.0\n");
  CHECK_THROWS_AS(read_zero_table(bad), InvalidSpec);
}

TEST_CASE("huge zero counts fall back to continuum beyond exact indices") {
  auto h = corollary(12);
  const auto f = make_product(h);
  CHECK(f.zeros.resolved_count() < f.zeros.count());
  CHECK(f.zeros.resolved_count() > 1000000);
  const double r = std::exp(100.0);
  CHECK(std::isfinite(log_f_minus_u(f, cplx(-r, 3.0))));
  CHECK(on_support_u(*h, cplx(-std::exp(143.0), 0.0)) == 0.0);
}
