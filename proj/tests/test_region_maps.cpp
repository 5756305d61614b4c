#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hybrid/errors.hpp"
#include "hybrid/integrate.hpp"
#include "hybrid/maps.hpp"
#include "helpers.hpp"

using namespace hybrid;
using hybrid::testing::pt1;
using hybrid::testing::pt2;

TEST_CASE("region basics") {
  Region r = Region::interval(0, 1);
  CHECK(r.dim() == 1);
  CHECK(r.contains(pt1(0.5)));
  CHECK(r.contains(pt1(1.0 + 1e-10)));
  CHECK_FALSE(r.contains(pt1(1.1)));
  CHECK_THROWS_AS(r.contains(pt2(0, 0)), DimensionMismatch);
  CHECK(r.clamp(pt1(1.7))[0] == 1.0);

  Region point = Region::interval(1, 1);
  CHECK(point.degenerate_axis(0));
  CHECK(r.contains_box(point));
  CHECK_FALSE(point.contains_box(r));
}

TEST_CASE("sample_grid: tensor grid and cap") {
  Region r = Region::interval(0, 1);
  auto g = r.sample_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g.front()[0] == 0.0);
  CHECK(g.back()[0] == 1.0);
  CHECK(g[2][0] == doctest::Approx(0.5));

  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 2;
  hi << 1, 2;  // second axis degenerate
  Region box(lo, hi);
  auto g2 = box.sample_grid(3);
  REQUIRE(g2.size() == 3);  // 3 x 1
  for (const auto& p : g2) CHECK(p[1] == 2.0);

  auto capped = r.sample_grid(1000, 50);
  CHECK(capped.size() == 50);
  for (const auto& p : capped) CHECK(r.contains(p));
  // same seed, same subsample
  auto capped2 = r.sample_grid(1000, 50);
  REQUIRE(capped.size() == capped2.size());
  for (std::size_t i = 0; i < capped.size(); ++i)
    CHECK(capped[i][0] == capped2[i][0]);
}

TEST_CASE("eval_map checks containment on both sides") {
  Region r = Region::interval(0, 1);
  SmoothMap dbl = SmoothMap::from_strings(r, Region::interval(0, 2), {"2*x1"});
  CHECK(eval_map(dbl, pt1(0.5))[0] == 1.0);
  CHECK_THROWS_AS(eval_map(dbl, pt1(1.5)), OutOfDomain);
  SmoothMap bad = SmoothMap::from_strings(r, Region::interval(0, 1), {"2*x1"});
  CHECK_THROWS_AS(eval_map(bad, pt1(0.9)), OutOfDomain);
}

TEST_CASE("jacobian: exact for affine, central elsewhere") {
  Region r = Region::interval(0, 1);
  SmoothMap aff = SmoothMap::from_strings(r, Region::interval(-10, 10),
                                          {"3*x1 - 1"});
  CHECK(jacobian(aff, pt1(0.5))(0, 0) == doctest::Approx(3.0).epsilon(1e-9));

  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << 1, 1;
  Region sq(lo, hi);
  SmoothMap prod =
      SmoothMap::from_strings(sq, Region::interval(0, 1), {"x1*x2"});
  auto J = jacobian(prod, pt2(0.3, 0.7));
  CHECK(J(0, 0) == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(J(0, 1) == doctest::Approx(0.3).epsilon(1e-6));

  // degenerate axis gives a zero column
  Eigen::VectorXd lo2(2), hi2(2);
  lo2 << 0, 2;
  hi2 << 1, 2;
  Region slab(lo2, hi2);
  SmoothMap m =
      SmoothMap::from_strings(slab, Region::interval(0, 10), {"x1 + x2"});
  auto J2 = jacobian(m, pt2(0.5, 2.0));
  CHECK(J2(0, 1) == 0.0);
}

TEST_CASE("smooth map composition is substitution") {
  Region r = Region::interval(0, 1);
  SmoothMap f = SmoothMap::from_strings(r, Region::interval(0, 1), {"x1^2"});
  SmoothMap g =
      SmoothMap::from_strings(Region::interval(0, 1), Region::interval(0, 2),
                              {"2*x1"});
  SmoothMap gf = SmoothMap::compose(g, f);
  CHECK(gf(pt1(0.5))[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(SmoothMap::compose(f, g), DomainMismatch);
  CHECK(SmoothMap::identity(r)(pt1(0.3))[0] == 0.3);
}

TEST_CASE("integrate: constant field is exact to roundoff") {
  Region r = Region::interval(0, 10);
  VectorField X = VectorField::from_strings(r, {"1"});
  Curve c = integrate(X, pt1(0), 0, 7.3, 1e-2);
  CHECK(c.back()[0] == doctest::Approx(7.3).epsilon(1e-13));
  CHECK(c.samples.front().first == 0.0);
  CHECK(c.samples.back().first == 7.3);
}

TEST_CASE("integrate: dx/dt = -x hits e^{-1}") {
  Region r = Region::interval(0, 1);
  VectorField X = VectorField::from_strings(r, {"-x1"});
  Curve c = integrate(X, pt1(1), 0, 1, 1e-3);
  CHECK(std::abs(c.back()[0] - std::exp(-1.0)) < 1e-6);
}

TEST_CASE("integrate: observed convergence order near 4") {
  // dx/dt = x on [0,1]; compare endpoint errors across step halvings.
  Region r = Region::interval(0, 3);
  VectorField X = VectorField::from_strings(r, {"x1"});
  double exact = std::exp(1.0);
  double e1 = std::abs(integrate(X, pt1(1), 0, 1, 1e-1).back()[0] - exact);
  double e2 = std::abs(integrate(X, pt1(1), 0, 1, 5e-2).back()[0] - exact);
  double order = std::log2(e1 / e2);
  CHECK(order > 3.5);
  CHECK(order < 4.5);
}

TEST_CASE("integrate: domain errors") {
  Region r = Region::interval(0, 1);
  VectorField X = VectorField::from_strings(r, {"1"});
  CHECK_THROWS_AS(integrate(X, pt1(2), 0, 1, 1e-2), OutOfDomain);
  try {
    integrate(X, pt1(0.5), 0, 1, 1e-2);
    FAIL("expected LeftRegion");
  } catch (const LeftRegion& e) {
    // exits at x = 1, i.e. t = 0.5
    CHECK(std::abs(e.exit_time_estimate - 0.5) < 1e-6);
  }
  // point curve
  Curve p = integrate(X, pt1(0.5), 2, 2, 1e-2);
  CHECK(p.samples.size() == 1);
  CHECK(p.t0 == p.t1);
}

TEST_CASE("map_curve pushes samples through the map") {
  Region r = Region::interval(0, 1);
  VectorField X = VectorField::from_strings(r, {"1"});
  Curve c = integrate(X, pt1(0), 0, 0.9, 1e-2);
  SmoothMap sq = SmoothMap::from_strings(r, Region::interval(0, 1), {"x1^2"});
  Curve m = map_curve(sq, c);
  REQUIRE(m.samples.size() == c.samples.size());
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    CHECK(m.samples[i].first == c.samples[i].first);
    CHECK(m.samples[i].second[0] ==
          doctest::Approx(c.samples[i].second[0] * c.samples[i].second[0]));
  }
}

TEST_CASE("check_ds_morphism: diagonal intertwines, square does not") {
  Region r = Region::interval(0, 1);
  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << 1, 1;
  Region sq(lo, hi);

  SmoothMap diag = SmoothMap::from_strings(r, sq, {"x1", "x1"});
  VectorField X = VectorField::from_strings(r, {"2 - 2*x1"});
  VectorField Y = VectorField::from_strings(sq, {"2 - x1 - x2",
                                                 "2 - x2 - x1"});
  auto bad = check_ds_morphism(diag, X, Y, r.sample_grid(17), 1e-6);
  CHECK(bad.empty());

  SmoothMap pert = SmoothMap::from_strings(r, sq, {"x1", "x1^2"});
  VectorField one1 = VectorField::from_strings(r, {"1"});
  VectorField one2 = VectorField::from_strings(sq, {"1", "1"});
  auto viol = check_ds_morphism(pert, one1, one2, r.sample_grid(17), 1e-6);
  CHECK_FALSE(viol.empty());
  // residual at x: |2x - 1|, worst near the endpoints
  double worst = 0;
  for (const auto& v : viol) worst = std::max(worst, v.residual);
  CHECK(worst > 0.5);
}
