#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kjell/errors.hpp"
#include "kjell/interval_set.hpp"

using namespace kjell;

TEST_CASE("kjellberg builder") {
  const auto s = build_kjellberg(2, 4, 0, 1);
  REQUIRE(s.size() == 2);
  CHECK(s.intervals()[0].lo == 1.0);
  CHECK(s.intervals()[0].hi == 2.0);
  CHECK(s.intervals()[1].lo == 4.0);
  CHECK(s.intervals()[1].hi == 8.0);
  CHECK(s.includes_origin());
  CHECK_FALSE(s.merged());
  CHECK_THROWS_AS(build_kjellberg(4, 2, 0, 1), InvalidSpec);
  CHECK_THROWS_AS(build_kjellberg(1, 2, 0, 1), InvalidSpec);
}

TEST_CASE("corollary builder") {
  const auto s = build_corollary(0.25, 3);
  CHECK_FALSE(s.includes_origin());
  CHECK(s.intervals().back().hi == doctest::Approx(std::exp(9.0)).epsilon(1e-14));
  CHECK(s.intervals().back().lo == doctest::Approx(std::exp(6.0)).epsilon(1e-14));
  CHECK(s.intervals().back().hi == doctest::Approx(8103.08).epsilon(1e-6));
  CHECK(s.intervals().back().lo == doctest::Approx(403.429).epsilon(1e-6));
  // the degenerate n = 0 point {1} touches [1, e] and is absorbed
  CHECK(s.merged());
  CHECK(s.intervals().front().lo == 1.0);
  CHECK_THROWS_AS(build_corollary(0.5, 3), InvalidSpec);
  CHECK_THROWS_AS(build_corollary(-0.1, 3), InvalidSpec);
  const auto z = build_corollary(0.0, 3);
  CHECK(z.intervals().back().hi == doctest::Approx(std::exp(27.0)).epsilon(1e-14));
  CHECK(z.intervals().back().lo == doctest::Approx(std::exp(24.0)).epsilon(1e-14));
}

TEST_CASE("degenerate intervals survive when isolated") {
  const IntervalSet s({{3.0, 3.0}, {5.0, 6.0}}, false);
  REQUIRE(s.size() == 2);
  CHECK(s.intervals()[0].degenerate());
  CHECK(s.contains(3.0));
  CHECK_FALSE(s.contains(3.5));
}

TEST_CASE("sodin builder merges the touching head") {
  const auto s = build_example_sodin(3);
  REQUIRE(s.size() == 2);
  CHECK(s.merged());
  CHECK(s.intervals()[0].lo == 1.0);
  CHECK(s.intervals()[0].hi == 2.5);
  CHECK(s.intervals()[1].lo == 3.0);
  CHECK(s.intervals()[1].hi == doctest::Approx(10.0 / 3.0));
}

TEST_CASE("thick builder") {
  const auto s = build_thick(0.5, 1);
  REQUIRE(s.size() == 2);
  CHECK(s.intervals()[1].lo == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s.intervals()[1].lo == doctest::Approx(3.41421).epsilon(1e-5));
  CHECK(s.intervals()[1].hi == doctest::Approx(6.82843).epsilon(1e-5));
  const auto big = build_thick(0.5, 30);
  for (std::size_t n = 0; n < big.size(); ++n)
    CHECK(big.intervals()[n].hi >= std::pow(2.0, double(n)));
}

TEST_CASE("log integral") {
  const double e = std::numbers::e;
  const IntervalSet s({{1, e}, {e * e, e * e * e}}, false);
  CHECK(log_integral(s, e * e * e) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(log_integral(s, 2.0) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(log_integral(s, 1.0), DomainError);
  CHECK_THROWS_AS(log_integral(s, 0.5), DomainError);
  for (int N : {1, 5, 20}) {
    const auto k = build_kjellberg(2, 4, 0, N);
    CHECK(log_integral(k, std::pow(4.0, N + 1)) ==
          doctest::Approx((N + 1) * std::log(2.0)).epsilon(1e-13));
  }
  CHECK(signed_log_integral(build_kjellberg(2, 4, -3, 3), 1.0 / 64.0) ==
        doctest::Approx(-3 * std::log(2.0)));
}

TEST_CASE("log densities") {
  const auto k = build_kjellberg(2, 4, 0, 20);
  // maxima sit at right endpoints 2*4^n: (n+1)/(2n+1); minima at 4^n: exactly 1/2
  const auto wide = log_densities(k, std::pow(4.0, 5), std::pow(4.0, 20), 200);
  CHECK(wide.lower == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wide.upper == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
  const auto tail = log_densities(k, std::pow(4.0, 12), std::pow(4.0, 20), 200);
  CHECK(std::abs(tail.upper - 0.5) <= 0.02);
  CHECK(std::abs(tail.lower - 0.5) <= 0.02);

  const IntervalSet ray({{1.0, 1e12}}, false);
  const auto r = log_densities(ray, 10.0, 1e12, 50);
  CHECK(r.upper == doctest::Approx(1.0));
  CHECK(r.lower == doctest::Approx(1.0));

  const IntervalSet none;
  const auto z = log_densities(none, 10.0, 1e6, 50);
  CHECK(z.upper == 0.0);
  CHECK(z.lower == 0.0);
}

TEST_CASE("complement within a window") {
  const IntervalSet s({{1, 2}, {4, 8}}, false);
  const auto c = complement_within(s, 10.0);
  REQUIRE(c.size() == 2);
  CHECK(c.intervals()[0].lo == 2.0);
  CHECK(c.intervals()[0].hi == 4.0);
  CHECK(c.intervals()[1].lo == 8.0);
  CHECK(c.intervals()[1].hi == 10.0);
}

TEST_CASE("distance to E and D1 membership") {
  const IntervalSet s({{1, 2}}, false);
  CHECK(dist_to_E(s, {-1.5, 1.0}) == doctest::Approx(1.0));
  CHECK_FALSE(in_D1(s, {-1.5, 1.0}));
  CHECK(dist_to_E(s, {3.0, 0.0}) == doctest::Approx(4.0));
  CHECK(in_D1(s, {3.0, 0.0}));
  CHECK(dist_to_E(s, {-4.0, 0.0}) == doctest::Approx(2.0));
  const auto k = build_kjellberg(2, 4, 0, 2);
  CHECK(dist_to_E(k, {0.5, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("text round trip is lossless") {
  const auto s = build_corollary(0.25, 6);
  std::stringstream ss;
  write_interval_set(ss, s);
  const auto t = read_interval_set(ss);
  REQUIRE(t.size() == s.size());
  CHECK(t.hash() == s.hash());
  CHECK(t.label() == s.label());
  CHECK(t.includes_origin() == s.includes_origin());

  std::stringstream bad("# intervals origin=0\n1 2\n3 x\n");
  CHECK_THROWS_AS(read_interval_set(bad), InvalidSpec);
  std::stringstream neg("-1 2\n");
  CHECK_THROWS_AS(read_interval_set(neg), InvalidSpec);
}
