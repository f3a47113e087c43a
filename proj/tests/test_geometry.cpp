#include <doctest.h>

#include <cmath>

#include "adaprox/bregman.hpp"
#include "adaprox/errors.hpp"
#include "adaprox/finsler.hpp"
#include "support/properties.hpp"
#include "support/test_oracles.hpp"

using namespace adaprox;
using testsupport::CheckStats;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("primal norm closed forms") {
  FinslerMetric inv = FinslerMetric::inverse_box(2);
  CHECK(inv.primal_norm({0.5, 0.25}, {1.0, 1.0}) == doctest::Approx(4.0));
  CHECK(inv.primal_norm({0.5, 0.25}, {0.0, 0.0}) == 0.0);

  FinslerMetric euc = FinslerMetric::euclidean(2);
  CHECK(euc.primal_norm({0.2, 0.7}, {3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(euc.primal_norm({0.2, 0.7}, {0.0, 0.0}) == 0.0);

  CHECK_THROWS_AS(inv.primal_norm({0.5, 0.0}, {1.0, 1.0}), InvalidPointError);
  CHECK_THROWS_AS(inv.primal_norm({-0.1, 0.5}, {1.0, 1.0}), InvalidPointError);
}

TEST_CASE("dual norm closed forms and grid oracle") {
  FinslerMetric inv = FinslerMetric::inverse_box(2);
  CHECK(inv.dual_norm({0.5, 0.5}, {2.0, 4.0}) == doctest::Approx(3.0));
  CHECK(inv.dual_norm({0.5, 0.5}, {0.0, 0.0}) == 0.0);

  Vec x{0.3, 0.7}, w{1.0, -1.0};
  double dual = inv.dual_norm(x, w);
  CHECK(dual == doctest::Approx(1.0));
  // maximize <w, t> over the boundary of the unit primal ball (10^4 samples)
  double grid = testsupport::grid_dual_norm_inverse_box(x, w, 2500);
  CHECK(dual == doctest::Approx(grid).epsilon(1e-9));

  FinslerMetric euc = FinslerMetric::euclidean(3);
  CHECK(euc.dual_norm({0, 0, 0}, {1.0, 2.0, 2.0}) == doctest::Approx(3.0));
}

TEST_CASE("norm axioms and lower bound, sampled") {
  Rng rng(1234);
  FinslerMetric inv = FinslerMetric::inverse_box(3);
  DomainSpec box = DomainSpec::open_unit_box(3);
  for (int s = 0; s < 200; ++s) {
    Vec x = testsupport::sample_point(rng, box, 1e-3);
    Vec t = testsupport::sample_dual(rng, 3, 5.0);
    Vec u = testsupport::sample_dual(rng, 3, 5.0);
    double lam = rng.uniform(-3.0, 3.0);

    // subadditivity, homogeneity, positive-definiteness
    CHECK(inv.primal_norm(x, linalg::add(t, u)) <=
          inv.primal_norm(x, t) + inv.primal_norm(x, u) + 1e-12);
    CHECK(inv.primal_norm(x, linalg::scaled(t, lam)) ==
          doctest::Approx(std::abs(lam) * inv.primal_norm(x, t)));
    if (linalg::norm2(t) > 0.0) CHECK(inv.primal_norm(x, t) > 0.0);

    // global floor |t|_x >= nu |t|_2
    CHECK(inv.primal_norm(x, t) >= inv.nu() * linalg::norm2(t) - 1e-12);

    // duality against the ball's extreme points t_i = +- x_i
    double corner_max = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) v += ((mask >> i) & 1 ? x[i] : -x[i]) * t[i];
      corner_max = std::max(corner_max, v);
    }
    CHECK(inv.dual_norm(x, t) == doctest::Approx(corner_max).epsilon(1e-10));
  }
}

TEST_CASE("inverse-box metric regularity") {
  Rng rng(77);
  FinslerMetric inv = FinslerMetric::inverse_box(3);
  DomainSpec box = DomainSpec::open_unit_box(3);
  CHECK(inv.beta() == 1.0);
  for (int s = 0; s < 200; ++s) {
    Vec x = testsupport::sample_point(rng, box, 1e-3);
    Vec xp = testsupport::sample_point(rng, box, 1e-3);
    Vec w = testsupport::sample_dual(rng, 3, 5.0);
    if (linalg::norm2(w) == 0.0) continue;
    double ratio = inv.dual_norm(xp, w) / inv.dual_norm(x, w);
    Vec diff = linalg::sub(xp, x);
    // one-sided bound from the metric's derivation
    CHECK(ratio <= 1.0 + inv.primal_norm(x, diff) + 1e-10);
    // two-sided regularity with beta = 1
    double bound =
        1.0 + inv.beta() * (inv.primal_norm(x, diff) + inv.primal_norm(xp, diff));
    CHECK(ratio <= bound + 1e-10);
  }
}

TEST_CASE("bregman divergence closed forms") {
  BregmanFunction barrier = BregmanFunction::inverse_barrier(1);
  CHECK(barrier.divergence({1.0}, {0.5}) == doctest::Approx(1.0));
  CHECK(barrier.divergence({0.7}, {0.7}) == 0.0);

  BregmanFunction half = BregmanFunction::half_squared_euclidean(2);
  CHECK(half.divergence({1.0, 1.0}, {0.0, 0.0}) == doctest::Approx(1.0));

  CHECK_THROWS_AS(barrier.divergence({-1.0}, {0.5}), InvalidPointError);
}

TEST_CASE("divergence matches its defining expansion, sampled") {
  Rng rng(31);
  BregmanFunction barrier = BregmanFunction::inverse_barrier(3);
  DomainSpec box = DomainSpec::open_unit_box(3);
  for (int s = 0; s < 200; ++s) {
    Vec to = testsupport::sample_point(rng, box, 1e-3);
    Vec from = testsupport::sample_point(rng, box, 1e-3);
    Vec g = barrier.gradient(from);
    double expanded = barrier.value(to) - barrier.value(from);
    for (int i = 0; i < 3; ++i) expanded -= g[i] * (to[i] - from[i]);
    double closed = barrier.divergence(to, from);
    CHECK(closed == doctest::Approx(expanded).epsilon(1e-9));
    CHECK(closed >= 0.0);
    if (linalg::distance(to, from) > 1e-9) CHECK(closed > 0.0);
  }
}

TEST_CASE("strong convexity moduli") {
  BregmanFunction half = BregmanFunction::half_squared_euclidean(2);
  CHECK(half.strong_convexity() == 1.0);
  BregmanFunction barrier = BregmanFunction::inverse_barrier(2);
  CHECK(barrier.strong_convexity() == 2.0);

  // literal barrier inequality D(x',x) >= |x'-x|_x^2, including points at
  // distance 1e-2 from the singular face
  Rng rng(5150);
  FinslerMetric inv = FinslerMetric::inverse_box(2);
  DomainSpec box = DomainSpec::open_unit_box(2);
  for (int s = 0; s < 200; ++s) {
    Vec x = testsupport::sample_point(rng, box, 1e-3);
    Vec xp = testsupport::sample_point(rng, box, 1e-3);
    if (s % 10 == 0) x[0] = 1e-2;
    if (s % 10 == 5) xp[1] = 1e-2;
    double nx = inv.primal_norm(x, linalg::sub(xp, x));
    CHECK(barrier.divergence(xp, x) >= nx * nx - 1e-10);
  }

  // half-squared-euclidean attains its modulus exactly
  Rng rng2(5151);
  for (int s = 0; s < 50; ++s) {
    Vec x = testsupport::sample_dual(rng2, 2, 3.0);
    Vec xp = testsupport::sample_dual(rng2, 2, 3.0);
    double d2 = linalg::norm2_sq(linalg::sub(xp, x));
    CHECK(half.divergence(xp, x) == doctest::Approx(0.5 * d2));
  }
}

TEST_CASE("prox closed forms") {
  BregmanFunction half = BregmanFunction::half_squared_euclidean(2);
  DomainSpec box = DomainSpec::box({-1.0, -1.0}, {1.0, 1.0});
  Vec p = half.prox(box, {0.9, 0.0}, {0.5, 0.0});
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));

  BregmanFunction barrier = BregmanFunction::inverse_barrier(1);
  DomainSpec unit = DomainSpec::open_unit_box(1);
  Vec q = barrier.prox(unit, {0.5}, {-2.0});
  CHECK(q[0] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
  // numeric minimization oracle agrees to 1e-6
  Vec oracle = testsupport::numeric_prox(barrier, unit, {0.5}, {-2.0});
  CHECK(std::abs(q[0] - oracle[0]) <= 1e-6);

  // clamp at the closed upper face
  Vec r = barrier.prox(unit, {0.9}, {5.0});
  CHECK(r[0] == 1.0);
}

TEST_CASE("prox with zero dual returns the base point") {
  Rng rng(404);
  {
    BregmanFunction half = BregmanFunction::half_squared_euclidean(3);
    DomainSpec box = DomainSpec::box({-1, -1, -1}, {1, 1, 1});
    Vec x = testsupport::sample_point(rng, box, 0.0);
    Vec p = half.prox(box, x, Vec(3, 0.0));
    CHECK(linalg::distance(p, x) == 0.0);
  }
  {
    BregmanFunction barrier = BregmanFunction::inverse_barrier(3);
    DomainSpec unit = DomainSpec::open_unit_box(3);
    Vec x = testsupport::sample_point(rng, unit, 1e-3);
    Vec p = barrier.prox(unit, x, Vec(3, 0.0));
    CHECK(linalg::distance(p, x) <= 1e-12);
  }
  {
    BregmanFunction barrier = BregmanFunction::inverse_barrier(3);
    DomainSpec simplex = DomainSpec::capacity_simplex_unit({2.0, 2.0, 2.0}, 3.0);
    Vec x = testsupport::sample_point(rng, simplex, 1e-3);
    Vec p = barrier.prox(simplex, x, Vec(3, 0.0));
    CHECK(linalg::distance(p, x) <= 1e-8);
  }
}

TEST_CASE("capacity-simplex prox stays feasible") {
  Rng rng(88);
  BregmanFunction barrier = BregmanFunction::inverse_barrier(3);
  DomainSpec simplex = DomainSpec::capacity_simplex_unit({2.0, 1.0, 3.0}, 2.5);
  for (int s = 0; s < 100; ++s) {
    Vec x = testsupport::sample_point(rng, simplex, 1e-3);
    Vec y = testsupport::sample_dual(rng, 3, 4.0);
    Vec p = barrier.prox(simplex, x, y);
    CHECK(simplex.contains(p, 1e-8));
    double served = 0.0;
    const Vec c{2.0, 1.0, 3.0};
    for (int i = 0; i < 3; ++i) served += c[i] * (1.0 - p[i]);
    CHECK(std::abs(served - 2.5) <= 1e-9);
  }
}

TEST_CASE("prox error paths") {
  BregmanFunction barrier = BregmanFunction::inverse_barrier(2);
  DomainSpec box = DomainSpec::box({-1, -1}, {1, 1});
  CHECK_THROWS_AS(barrier.prox(box, {0.5, 0.5}, {0.0, 0.0}), InvalidConfigError);

  DomainSpec unit = DomainSpec::open_unit_box(2);
  CHECK_THROWS_AS(barrier.prox(unit, {1.5, 0.5}, {0.0, 0.0}), InvalidPointError);

  BregmanFunction half = BregmanFunction::half_squared_euclidean(2);
  DomainSpec simplex = DomainSpec::capacity_simplex_unit({1.0, 1.0}, 1.0);
  CHECK_THROWS_AS(half.prox(simplex, {0.5, 0.5}, {0.0, 0.0}), InvalidConfigError);

  // a dual so extreme the multiplier bracket cannot reach it surfaces as a
  // numerical failure carrying the residual
  DomainSpec sim3 = DomainSpec::capacity_simplex_unit({2.0, 2.0, 2.0}, 3.0);
  BregmanFunction b3 = BregmanFunction::inverse_barrier(3);
  try {
    b3.prox(sim3, {0.5, 0.5, 0.5}, {-1e308, -1e308, -1e308});
    FAIL("expected NumericalFailureError");
  } catch (const NumericalFailureError& e) {
    CHECK(std::isfinite(e.residual()));
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("three-point identity, sampled") {
  Rng rng(9001);
  CheckStats a = testsupport::check_three_point(BregmanFunction::half_squared_euclidean(2),
                                                DomainSpec::box({-2, -2}, {2, 2}), rng, 200, 0.0);
  CHECK_MESSAGE(a.ok(), "worst violation ", a.worst);
  CheckStats b = testsupport::check_three_point(BregmanFunction::inverse_barrier(3),
                                                DomainSpec::open_unit_box(3), rng, 200, 1e-3);
  CHECK_MESSAGE(b.ok(), "worst violation ", b.worst);
}

TEST_CASE("prox descent inequality, sampled") {
  Rng rng(9002);
  CheckStats a = testsupport::check_prox_descent(BregmanFunction::half_squared_euclidean(2),
                                                 DomainSpec::box({-1, -1}, {1, 1}), rng, 200,
                                                 0.0, 2.0);
  CHECK_MESSAGE(a.ok(), "worst violation ", a.worst);
  CheckStats b = testsupport::check_prox_descent(BregmanFunction::inverse_barrier(2),
                                                 DomainSpec::open_unit_box(2), rng, 200, 1e-3,
                                                 3.0);
  CHECK_MESSAGE(b.ok(), "worst violation ", b.worst);
  CheckStats c = testsupport::check_prox_descent(
      BregmanFunction::inverse_barrier(3),
      DomainSpec::capacity_simplex_unit({2.0, 2.0, 2.0}, 3.0), rng, 200, 1e-3, 3.0);
  CHECK_MESSAGE(c.ok(), "worst violation ", c.worst);
}

TEST_CASE("two-prox inequality, sampled") {
  Rng rng(9003);
  CheckStats a = testsupport::check_two_prox(BregmanFunction::half_squared_euclidean(2),
                                             DomainSpec::box({-1, -1}, {1, 1}), rng, 200, 0.0,
                                             2.0);
  CHECK_MESSAGE(a.ok(), "worst violation ", a.worst);
  CheckStats b = testsupport::check_two_prox(BregmanFunction::inverse_barrier(2),
                                             DomainSpec::open_unit_box(2), rng, 200, 1e-3, 3.0);
  CHECK_MESSAGE(b.ok(), "worst violation ", b.worst);
}

TEST_CASE("prox agrees with the numeric minimization oracle") {
  Rng rng(9004);
  CheckStats stats = testsupport::check_prox_vs_oracle(rng, 50);
  CHECK_MESSAGE(stats.ok(), "worst point error above 1e-6 by ", stats.worst);
}

TEST_SUITE_END();
