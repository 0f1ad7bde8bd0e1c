#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kjell/errors.hpp"
#include "kjell/growth.hpp"
#include "kjell/numerics.hpp"

using namespace kjell;

namespace {

const double kPi = std::numbers::pi;

GrowthReport synthetic(const std::vector<double>& radii, double power) {
  GrowthReport rep;
  for (double r : radii) {
    rep.radii.push_back(r);
    rep.B.push_back(std::pow(r, power));
    rep.A.push_back(0.0);
  }
  return rep;
}

}  // namespace

TEST_CASE("profile of the half-line and a single segment") {
  const auto half = solve(IntervalSet({{1e-3, 1e4}}, false, "halfline"), 48);
  const auto rep = profile(half, logspace(1.0, 100.0, 15));
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.passed, c.name << " " << c.detail);
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    CHECK(std::abs(rep.A[i]) < 1e-6 * rep.B[i]);
    CHECK(rep.B[i] == doctest::Approx(std::sqrt(rep.radii[i])).epsilon(0.05));
  }
  const auto fit = order_fit(rep, 10.0, 100.0);
  CHECK(fit.order == doctest::Approx(0.5).epsilon(0.02));
  CHECK(fit.lower_order == doctest::Approx(0.5).epsilon(0.02));

  const auto seg = solve(IntervalSet({{1.0, 2.0}}, false, "segment"), 32);
  const auto srep = profile(seg, {0.5, 3.0, 7.0});
  CHECK(srep.A[1] > 0.0);
  CHECK(srep.A[1] == doctest::Approx(oracle_green_segment(1, 2, -3.0) / oracle_green_segment(1, 2, 1.0)).epsilon(1e-6));
  for (std::size_t i = 0; i < srep.radii.size(); ++i) CHECK(srep.A[i] <= srep.B[i]);
}

TEST_CASE("order fit on synthetic profiles") {
  const auto rep = synthetic(logspace(2.0, 1e6, 50), 0.25);
  const auto fit = order_fit(rep, 2.0, 1e6);
  CHECK(fit.order == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fit.lower_order == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fit.samples == 50);
  auto bad = rep;
  bad.B[10] = 0.0;
  CHECK_THROWS_AS(order_fit(bad, 2.0, 1e6), DomainError);
  CHECK_THROWS_AS(order_fit(rep, 0.5, 10.0), DomainError);
}

TEST_CASE("Beurling exponent and check") {
  const IntervalSet full({{1.0, 4.0}}, false, "full");
  CHECK(std::exp(beurling_exponent(full, 1.0, 4.0)) == doctest::Approx(2.0).epsilon(1e-14));
  const IntervalSet none({{10.0, 20.0}}, false, "far");
  CHECK(beurling_exponent(none, 1.0, 4.0) == 0.0);

  const auto pairs = random_pairs(1e3, 100, 11);
  REQUIRE(pairs.size() == 100);
  for (const auto& [a, b] : pairs) CHECK((1.0 <= a && a < b && b <= 1e3));
  CHECK(random_pairs(1e3, 100, 11) == pairs);

  const auto h = solve(build_corollary(0.25, 6), 32);
  const auto rec = check_beurling([&](double r) { return eval_u(h, r); }, h.set, random_pairs(h.trust_radius, 100, 3));
  CHECK_MESSAGE(rec.passed, rec.detail);
  CHECK(rec.margin > 0.0);

  // a flat B violates the bound across a fully covered range
  const auto flat = check_beurling([](double) { return 1.0; }, full, {{1.0, 4.0}});
  CHECK_FALSE(flat.passed);
}

TEST_CASE("Barry thresholds") {
  DensityEstimate d;
  d.lower = 0.49;
  d.upper = 0.52;
  OrderFit fit;
  fit.order = 0.25;
  fit.lower_order = 0.25;
  CHECK(check_barry(fit, d).passed);
  d.lower = 0.44;
  CHECK_FALSE(check_barry(fit, d).passed);

  OrderFit zero;
  DensityEstimate one{1.0, 0.96, 1.0, 10.0, 10};
  CHECK(check_barry(zero, one).passed);
  one.lower = 0.9;
  CHECK_FALSE(check_barry(zero, one).passed);

  OrderFit half;
  half.order = half.lower_order = 0.5;
  CHECK(check_barry(half, DensityEstimate{}).passed);
}

TEST_CASE("min type: Kjellberg decays, the thick set does not") {
  const auto kj = solve(build_kjellberg(2, 4, 0, 12), 32);
  const auto mk = check_min_type(kj);
  CHECK_MESSAGE(mk.record.passed, mk.record.detail);
  CHECK(mk.decay_factor > 1.2);

  const double p1 = poisson_lower_bound(kj, 1.0);
  CHECK(p1 > 0.0);
  CHECK(p1 <= eval_u(kj, 1.0));

  const auto th = solve(build_thick(0.5, 14), 32);
  const auto mt = check_min_type(th);
  CHECK_MESSAGE(mt.record.passed, mt.record.detail);
  for (double v : mt.scaled) CHECK(v >= mt.scaled.front() / 1.5);
}

TEST_CASE("Poisson bound never exceeds u") {
  const auto h = solve(IntervalSet({{0.5, 1.0}}, false, "short"), 32);
  for (double r : {1.0, 2.0, 10.0}) CHECK(poisson_lower_bound(h, r) <= eval_u(h, r) * (1 + 1e-9));
}

TEST_CASE("annulus core bound") {
  CHECK(annulus_bound(1.0, std::exp(2 * kPi)) == doctest::Approx(std::exp(kPi / 2)).epsilon(1e-14));
  CHECK(annulus_bound(1.0, std::exp(2 * kPi)) == doctest::Approx(4.81048).epsilon(1e-5));
  CHECK(annulus_bound(2.0, 4.0) == doctest::Approx(std::exp(kPi * kPi / std::log(2.0))).epsilon(1e-14));
  CHECK_THROWS_AS(annulus_bound(0.0, 1.0), DomainError);

  // a segment seen from far away: the core-circle ratio tends to 1
  for (double d : {2e4, 2e8}) {
    const double core = std::sqrt(2.0 * d);
    double mx = 0, mn = 1e300;
    for (int j = 0; j < 128; ++j) {
      const double v = oracle_green_segment(1, 2, std::polar(core, 2 * kPi * j / 128));
      mx = std::max(mx, v);
      mn = std::min(mn, v);
    }
    CHECK(mx / mn <= annulus_bound(2.0, d));
    CHECK(mx / mn < 1.0 + 2.0 / core);
  }

  const auto h = solve(build_kjellberg(2, 4, -6, 6), 32);
  const auto rec = check_annulus_harnack(h, h.set.gaps());
  CHECK_MESSAGE(rec.passed, rec.detail);
  CHECK(rec.samples >= 10);
}

TEST_CASE("theta monotonicity, bracketing and CSV") {
  const auto h = solve(build_corollary(0.25, 6), 32);
  const auto mono = check_theta_monotone(h, 30, 30);
  CHECK_MESSAGE(mono.passed, mono.detail);
  CHECK(mono.samples == 930);
  const auto br = check_bracketing(h, h.trust_radius);
  CHECK_MESSAGE(br.passed, br.detail);
  CHECK_THROWS_AS(bracket(h, 1.0), DomainError);

  const auto rep = profile(h, {2.0, 4.0});
  std::ostringstream os;
  write_growth_csv(os, rep);
  CHECK(os.str().rfind("r,A,B,B/sqrt(r)\n", 0) == 0);
}

TEST_CASE("negative-axis gap peaks decay for the integer-slit example") {
  SolveOptions o;
  o.nodes_per_interval = 4;
  const auto h = solve(build_example_sodin(300), o);
  const auto peaks = gap_peaks(h, 10.0, 30.0);
  REQUIRE(peaks.size() >= 19);
  for (std::size_t i = 1; i < peaks.size(); ++i) CHECK(peaks[i].value < peaks[i - 1].value);
  for (const auto& p : peaks) CHECK((p.s > p.c && p.s < p.d));
}
