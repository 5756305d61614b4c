#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hybrid/errors.hpp"
#include "hybrid/morphism.hpp"
#include "helpers.hpp"

using namespace hybrid;
using hybrid::testing::pt1;
using hybrid::testing::pt2;

TEST_CASE("identity morphism verifies exactly") {
  HybridSystem H = hybrid::testing::sawtooth_system();
  auto rep = verify_hds_morphism(identity_morphism(H));
  CHECK(rep.ok());
  CHECK(rep.exact);
  CHECK(rep.max_residual == doctest::Approx(0.0));
}

TEST_CASE("diagonal morphism verifies, unit and damped fields") {
  {
    HybridSystem I = hybrid::testing::sawtooth_system("1");
    HybridSystem S = hybrid::testing::square_system("1", "1");
    auto rep = verify_hds_morphism(hybrid::testing::diagonal_morphism(I, S));
    CHECK(rep.ok());
    CHECK(rep.exact);
    CHECK(rep.max_residual <= 1e-6);
  }
  {
    HybridSystem I = hybrid::testing::sawtooth_system("2 - 2*x1");
    HybridSystem S = hybrid::testing::square_system("2 - x1 - x2",
                                                    "2 - x2 - x1");
    auto rep = verify_hds_morphism(hybrid::testing::diagonal_morphism(I, S));
    CHECK(rep.ok());
    CHECK(rep.max_residual <= 1e-6);
  }
}

TEST_CASE("perturbed alpha x -> (x, x^2) fails with known residual") {
  HybridSystem I = hybrid::testing::sawtooth_system();
  HybridSystem S = hybrid::testing::square_system();
  HDSMorphism m = hybrid::testing::diagonal_morphism(I, S);
  m.alpha_of.erase("*");
  m.alpha_of.emplace("*",
                     SmoothMap::from_strings(I.phase.region("*"),
                                             S.phase.region("*"),
                                             {"x1", "x1^2"}));
  auto rep = verify_hds_morphism(m);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.exact);
  // intertwining residual at x is |2x - 1|; worst grid point is an endpoint
  CHECK(rep.max_residual >= 0.5);
  CHECK(rep.max_residual == doctest::Approx(1.0).epsilon(1e-4));
  // the reset image (1,1) -> (0,0) still lands in the target relation, so
  // the failure is purely dynamical
  auto base = verify_hyph_morphism(m.base());
  CHECK(base.ok());
}

TEST_CASE("relation-image inclusion failures are caught") {
  HybridSystem I = hybrid::testing::sawtooth_system();
  HybridSystem S = hybrid::testing::square_system();
  // break the target reset so (0,0) is no longer the image of (1,1)
  S.phase.relation_of.erase("alpha");
  Region sq = S.phase.region("*");
  S.phase.relation_of.emplace(
      "alpha", Relation::finite(sq, sq, {{pt2(0.5, 0.5), pt2(1, 1)}}));
  HDSMorphism m = hybrid::testing::diagonal_morphism(I, S);
  auto rep = verify_hds_morphism(m);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations[0].where == "gamma");
}

TEST_CASE("structural mismatches throw") {
  HybridSystem I = hybrid::testing::sawtooth_system();
  HybridSystem S = hybrid::testing::square_system();
  HDSMorphism m = hybrid::testing::diagonal_morphism(I, S);
  m.phi.edge_map.clear();
  CHECK_THROWS_AS(verify_hds_morphism(m), StructuralMismatch);

  HDSMorphism bad_alpha = hybrid::testing::diagonal_morphism(I, S);
  bad_alpha.alpha_of.erase("*");
  bad_alpha.alpha_of.emplace(
      "*", SmoothMap::from_strings(Region::interval(0, 2),
                                   S.phase.region("*"), {"x1", "x1"}));
  CHECK_THROWS_AS(verify_hds_morphism(bad_alpha), StructuralMismatch);
}

TEST_CASE("composition: units and associativity on sample grids") {
  HybridSystem I = hybrid::testing::sawtooth_system();
  HybridSystem S = hybrid::testing::square_system();
  HDSMorphism m = hybrid::testing::diagonal_morphism(I, S);
  HDSMorphism idI = identity_morphism(I);
  HDSMorphism idS = identity_morphism(S);

  HDSMorphism left = compose_morphisms(idS, m);
  HDSMorphism right = compose_morphisms(m, idI);
  for (const auto& x : I.phase.region("*").sample_grid(17)) {
    Point want = m.alpha("*")(x);
    CHECK((left.alpha("*")(x) - want).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK((right.alpha("*")(x) - want).lpNorm<Eigen::Infinity>() < 1e-12);
  }
  CHECK(left.phi.edge_map == m.phi.edge_map);
  CHECK(right.phi.edge_map == m.phi.edge_map);
}

TEST_CASE("composition of verified morphisms verifies (random triples)") {
  auto rng = hybrid::testing::rng(31);
  std::uniform_real_distribution<double> shift(0.0, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    // interval --diag--> square --swap--> square --affine--> square
    HybridSystem I = hybrid::testing::sawtooth_system();
    HybridSystem S = hybrid::testing::square_system();
    HDSMorphism m = hybrid::testing::diagonal_morphism(I, S);

    Region sq = S.phase.region("*");
    HDSMorphism swap{S, S, identity_morphism(S).phi, {}};
    swap.alpha_of.emplace("*",
                          SmoothMap::from_strings(sq, sq, {"x2", "x1"}));

    // a random affine symmetry of the diagonal: x -> (1-s)x + s * reversed
    double s = shift(rng);
    std::string a = std::to_string(1 - s) + "*x1 + " + std::to_string(s) +
                    "*x2";
    std::string b = std::to_string(1 - s) + "*x2 + " + std::to_string(s) +
                    "*x1";
    HDSMorphism aff{S, S, identity_morphism(S).phi, {}};
    aff.alpha_of.emplace("*", SmoothMap::from_strings(sq, sq, {a, b}));

    REQUIRE(verify_hds_morphism(m).ok());
    REQUIRE(verify_hds_morphism(swap).ok());
    REQUIRE(verify_hds_morphism(aff).ok());

    HDSMorphism c1 = compose_morphisms(aff, compose_morphisms(swap, m));
    HDSMorphism c2 = compose_morphisms(compose_morphisms(aff, swap), m);
    auto r1 = verify_hds_morphism(c1);
    CHECK(r1.ok());
    for (const auto& x : I.phase.region("*").sample_grid(9))
      CHECK((c1.alpha("*")(x) - c2.alpha("*")(x)).lpNorm<Eigen::Infinity>() <
            1e-9);
  }
}

TEST_CASE("phase-space morphism composition matches system-level") {
  HybridSystem I = hybrid::testing::sawtooth_system();
  HybridSystem S = hybrid::testing::square_system();
  HDSMorphism m = hybrid::testing::diagonal_morphism(I, S);
  HyPhMorphism base = m.base();
  HyPhMorphism comp = compose_morphisms(identity_morphism(S.phase), base);
  CHECK(verify_hyph_morphism(comp).ok());
  for (const auto& x : I.phase.region("*").sample_grid(9))
    CHECK((comp.alpha("*")(x) - base.alpha("*")(x)).lpNorm<Eigen::Infinity>() <
          1e-12);
}
