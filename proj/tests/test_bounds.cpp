#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sharpbound/bounds.hpp"
#include "sharpbound/rng.hpp"

using namespace sharpbound;

namespace {

SpectralBounds random_bounds(Rng& rng) {
  const double m1 = rng.uniform(0.2, 2.0);
  const double m2 = rng.uniform(0.2, 2.0);
  return SpectralBounds(m1, m1 * rng.uniform(1.0, 5.0), m2, m2 * rng.uniform(1.0, 5.0));
}

}  // namespace

TEST_CASE("spectral bounds validation") {
  CHECK_THROWS_AS(SpectralBounds(0.0, 1.0, 1.0, 2.0), DomainViolation);
  CHECK_THROWS_AS(SpectralBounds(2.0, 1.0, 1.0, 2.0), DomainViolation);
  CHECK_THROWS_AS(SpectralBounds(1.0, 2.0, -1.0, 2.0), DomainViolation);
}

TEST_CASE("alpha on hand-computed bounds") {
  CHECK(alpha_polya_szego(SpectralBounds(1, 1, 1, 1)) == 1.0);
  CHECK(alpha_polya_szego(SpectralBounds(3, 3, 2, 2)) == 1.0);  // m = M
  CHECK(alpha_polya_szego(SpectralBounds(1, 2, 1, 2)) == Catch::Approx(1.25).margin(1e-15));
  CHECK(alpha_polya_szego(SpectralBounds(1, 4, 1, 4)) == Catch::Approx(2.125).margin(1e-15));
}

TEST_CASE("beta piecewise value") {
  CHECK(beta_squared(SpectralBounds(2, 2, 5, 5)) == Catch::Approx(1.0).margin(1e-15));
  // alpha^2 = 1.5625 <= 2 = sqrt(M/m): first branch, alpha^4.
  CHECK(beta_squared(SpectralBounds(1, 2, 1, 2)) == Catch::Approx(2.44140625).margin(1e-14));
  // alpha^2 = 4.515625 >= 4: second branch, 4 (2 alpha^2 - 4).
  CHECK(beta_squared(SpectralBounds(1, 4, 1, 4)) == Catch::Approx(20.125).margin(1e-13));
}

TEST_CASE("beta is continuous across the branch switch") {
  // Family m1 = 1, m2 = 1, M2 = r, M1 = s: the switch is at alpha^2 = sqrt(M/m).
  // Locate the boundary along s for several r by bisection on the branch
  // predicate, then compare both branch formulas there.
  for (double r : {1.5, 2.0, 3.0}) {
    double lo = 1.0, hi = 50.0;
    const auto on_first_branch = [&](double s) {
      const SpectralBounds b(1.0, s, 1.0, r);
      const double a = alpha_polya_szego(b);
      return a * a <= std::sqrt(b.M() / b.m());
    };
    REQUIRE(on_first_branch(lo));
    REQUIRE_FALSE(on_first_branch(hi));
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (on_first_branch(mid) ? lo : hi) = mid;
    }
    const SpectralBounds b(1.0, lo, 1.0, r);
    const double a2 = std::pow(alpha_polya_szego(b), 2.0);
    const double ratio = std::sqrt(b.M() / b.m());
    const double first = a2 * a2;
    const double second = ratio * (2.0 * a2 - ratio);
    CHECK(first == Catch::Approx(second).epsilon(1e-9));
    CHECK(beta_squared(b) == Catch::Approx(first).epsilon(1e-9));
  }
}

TEST_CASE("diaz-metcalf constants") {
  CHECK(dm_constant(SpectralBounds(1, 1, 1, 1)) == 2.0);
  CHECK(dm_constant(SpectralBounds(1, 2, 1, 2)) == Catch::Approx(2.5).margin(1e-15));
  CHECK(dm_constant(SpectralBounds(1, 4, 1, 4)) == Catch::Approx(4.25).margin(1e-15));  // 4/1 + 1/4
  CHECK(dm_constant(SpectralBounds(1, 1, 1, 4)) == Catch::Approx(5.0).margin(1e-15));   // 4/1 + 1/1

  CHECK(dm_squared_constant(SpectralBounds(1, 1, 1, 1)) == Catch::Approx(2.0).margin(1e-15));
  CHECK(dm_squared_constant(SpectralBounds(1, 2, 1, 2)) == Catch::Approx(3.125).margin(1e-14));
  // K dominates the first-power constant (remark after the squared theorem).
  CHECK(dm_squared_constant(SpectralBounds(1, 2, 1, 2)) >= dm_constant(SpectralBounds(1, 2, 1, 2)));
}

TEST_CASE("gruss bound") {
  CHECK(gruss_bound(SpectralBounds(2, 2, 3, 3)) == Catch::Approx(0.0).margin(1e-15));
  CHECK(gruss_bound(SpectralBounds(1, 2, 1, 2)) == Catch::Approx(23.0625).margin(1e-12));
  // Monotone in M1 with the rest fixed: spot values.
  CHECK(gruss_bound(SpectralBounds(1, 3, 1, 2)) == Catch::Approx(114.0625).margin(1e-10));
  CHECK(gruss_bound(SpectralBounds(1, 3, 1, 2)) > gruss_bound(SpectralBounds(1, 2, 1, 2)));
}

TEST_CASE("kantorovich factor") {
  CHECK(kantorovich_factor(2.0, 2.0) == 1.0);
  CHECK(kantorovich_factor(1.0, 2.0) == Catch::Approx(9.0 / 8.0).margin(1e-15));
  CHECK(kantorovich_factor(1.0, 4.0) == Catch::Approx(25.0 / 16.0).margin(1e-15));
  CHECK_THROWS_AS(kantorovich_factor(2.0, 1.0), DomainViolation);
  CHECK_THROWS_AS(kantorovich_factor(0.0, 1.0), DomainViolation);
}

TEST_CASE("alpha >= 1 and beta >= alpha^2 with equality only at m = M") {
  Rng rng(2024, 1);
  for (int rep = 0; rep < 200; ++rep) {
    const SpectralBounds b = random_bounds(rng);
    const double a = alpha_polya_szego(b);
    const double beta = beta_squared(b);
    CHECK(a >= 1.0);
    CHECK(beta >= a * a * (1.0 - 1e-14));
    if (b.M() / b.m() > 1.0 + 1e-6) CHECK(beta > a * a);
  }
  const SpectralBounds degenerate(2, 2, 7, 7);
  CHECK(beta_squared(degenerate) == Catch::Approx(std::pow(alpha_polya_szego(degenerate), 2)).margin(1e-15));
}

TEST_CASE("beta never exceeds alpha^4") {
  Rng rng(2024, 2);
  for (int rep = 0; rep < 200; ++rep) {
    const SpectralBounds b = random_bounds(rng);
    const double a = alpha_polya_szego(b);
    CHECK(beta_squared(b) <= std::pow(a, 4.0) * (1.0 + 1e-14));
  }
}

TEST_CASE("alpha_general with sqrt reduces to alpha_polya_szego") {
  Rng rng(2024, 3);
  const MeanSpec geo = MeanSpec::geometric();
  for (int rep = 0; rep < 100; ++rep) {
    const SpectralBounds b = random_bounds(rng);
    CHECK(alpha_general(geo, b) == Catch::Approx(alpha_polya_szego(b)).epsilon(1e-10));
  }
}

TEST_CASE("alpha_general of an affine representing function is 1") {
  const SpectralBounds b(1, 2, 1, 3);
  CHECK(alpha_general(named_mean("arithmetic"), b) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("alpha_general on a degenerate interval is 1") {
  CHECK(alpha_general(MeanSpec::geometric(), SpectralBounds(2, 2, 3, 3)) == 1.0);
}

TEST_CASE("weighted closed form agrees with the numeric maximization") {
  Rng rng(2024, 4);
  for (double mu : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (int rep = 0; rep < 20; ++rep) {
      const SpectralBounds b = random_bounds(rng);
      const double closed = alpha_weighted_geometric_closed(mu, b);
      const double numeric = alpha_general(MeanSpec::weighted_geometric(mu), b);
      CHECK(closed == Catch::Approx(numeric).epsilon(1e-9));
    }
  }
  // Frozen spot values (independent high-precision maximization).
  CHECK(alpha_weighted_geometric_closed(0.25, SpectralBounds(1, 2, 1, 2)) ==
        Catch::Approx(1.1810714787119986).epsilon(1e-12));
  CHECK(alpha_weighted_geometric_closed(0.3, SpectralBounds(1, 4, 1, 4)) ==
        Catch::Approx(1.87256678187708794).epsilon(1e-12));
}

TEST_CASE("weighted closed form at mu = 1/2 is alpha_polya_szego") {
  CHECK(alpha_weighted_geometric_closed(0.5, SpectralBounds(1, 2, 1, 2)) ==
        Catch::Approx(1.25).epsilon(1e-12));
  CHECK(alpha_weighted_geometric_closed(0.5, SpectralBounds(1, 4, 1, 4)) ==
        Catch::Approx(2.125).epsilon(1e-12));
  CHECK_THROWS_AS(alpha_weighted_geometric_closed(0.0, SpectralBounds(1, 2, 1, 2)), WeightOutOfRange);
  CHECK(alpha_weighted_geometric_closed(0.5, SpectralBounds(2, 2, 3, 3)) == 1.0);
}

TEST_CASE("beta_general with sqrt reduces to beta_squared") {
  Rng rng(2024, 5);
  const MeanSpec geo = MeanSpec::geometric();
  for (int rep = 0; rep < 100; ++rep) {
    const SpectralBounds b = random_bounds(rng);
    const double alpha = alpha_general(geo, b);
    CHECK(beta_general(geo, b, alpha) == Catch::Approx(beta_squared(b)).epsilon(1e-8));
  }
  const SpectralBounds first(1, 2, 1, 2), second(1, 4, 1, 4);
  CHECK(beta_general(geo, first, alpha_general(geo, first)) == Catch::Approx(2.44140625).epsilon(1e-10));
  CHECK(beta_general(geo, second, alpha_general(geo, second)) == Catch::Approx(20.125).epsilon(1e-10));
}

TEST_CASE("beta_general degenerate interval evaluates at the single point") {
  const SpectralBounds b(2, 2, 3, 3);
  const MeanSpec geo = MeanSpec::geometric();
  CHECK(beta_general(geo, b, 1.0) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("alpha and beta are scale invariant") {
  Rng rng(2024, 6);
  for (int rep = 0; rep < 50; ++rep) {
    const SpectralBounds b = random_bounds(rng);
    const double s = rng.uniform(0.1, 10.0);
    const double t = rng.uniform(0.1, 10.0);
    const SpectralBounds scaled(s * b.m1, s * b.M1, t * b.m2, t * b.M2);
    CHECK(alpha_polya_szego(scaled) == Catch::Approx(alpha_polya_szego(b)).epsilon(1e-12));
    CHECK(beta_squared(scaled) == Catch::Approx(beta_squared(b)).epsilon(1e-12));
  }
}

TEST_CASE("bound_set collects the individual constants") {
  const BoundSet s = bound_set(SpectralBounds(1, 2, 1, 2));
  CHECK(s.alpha == Catch::Approx(1.25).margin(1e-15));
  CHECK(s.beta == Catch::Approx(2.44140625).margin(1e-14));
  CHECK(s.dm == Catch::Approx(2.5).margin(1e-15));
  CHECK(s.dm_squared == Catch::Approx(3.125).margin(1e-14));
  CHECK(s.gruss == Catch::Approx(23.0625).margin(1e-12));
  CHECK(s.kantorovich == Catch::Approx(25.0 / 16.0).margin(1e-14));
}

TEST_CASE("theorem constants grow when enclosures widen") {
  // alpha and beta depend on M/m only, so they are nondecreasing under both
  // m1 down and M1 up. dm is nondecreasing under m1 down but NOT under M1 up:
  // the m2/M1 term shrinks, e.g. dm(1,4,1,3) = 3.25 < 3.5 = dm(1,2,1,3).
  const SpectralBounds base(1.0, 2.0, 1.0, 3.0);
  const SpectralBounds wider_low(0.5, 2.0, 1.0, 3.0);
  const SpectralBounds wider_high(1.0, 4.0, 1.0, 3.0);
  for (const SpectralBounds* w : {&wider_low, &wider_high}) {
    CHECK(alpha_polya_szego(*w) >= alpha_polya_szego(base));
    CHECK(beta_squared(*w) >= beta_squared(base));
  }
  CHECK(dm_constant(wider_low) >= dm_constant(base));
  CHECK(dm_constant(wider_high) == Catch::Approx(3.25).margin(1e-15));
}
