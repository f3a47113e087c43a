#include <doctest.h>

#include <cmath>

#include "adaprox/errors.hpp"
#include "adaprox/merit.hpp"
#include "adaprox/oracle.hpp"
#include "adaprox/problems.hpp"
#include "support/properties.hpp"
#include "support/test_oracles.hpp"

using namespace adaprox;

TEST_SUITE_BEGIN("merit");

namespace {

linalg::Matrix identity_matrix(std::size_t d) {
  linalg::Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

VIProblem unit_bilinear() { return make_bilinear(identity_matrix(1), {0.0}, {0.0}, 1.0); }

}  // namespace

TEST_CASE("restricted gap vanishes at the solution") {
  VIProblem p = unit_bilinear();
  TestDomain C = TestDomain::full_box(4096);
  double gap = restricted_gap(p, C, {0.0, 0.0});
  CHECK(gap == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(gap >= 0.0);
}

TEST_CASE("singleton test domain gives zero gap") {
  VIProblem p = unit_bilinear();
  TestDomain C = TestDomain::neighborhood({0.25, -0.25}, 0.0, 64);
  CHECK(restricted_gap(p, C, {0.25, -0.25}) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("sampled gap matches the brute-force lattice") {
  VIProblem p = unit_bilinear();
  TestDomain C = TestDomain::full_box(4096);
  double sampled = restricted_gap(p, C, {0.5, 0.5});
  double grid = restricted_gap_grid(p, C, {0.5, 0.5}, 1001);
  // exact supremum is |x1| + |x2| = 1 for this linear field
  CHECK(grid == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(sampled - grid) <= 0.02 * grid);

  // discontinuous field: the supremum approaches g |cand|_1 near the kink
  VIProblem s = make_sign_field(2, 1.0, {0.0, 0.0}, 1.0);
  Vec cand{0.3, -0.2};
  double sampled_s = restricted_gap(s, TestDomain::full_box(4096), cand);
  double grid_s = restricted_gap_grid(s, TestDomain::full_box(4096), cand, 1001);
  CHECK(sampled_s <= grid_s + 0.01);
  CHECK(sampled_s >= grid_s - 0.01);
  CHECK(sampled_s == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("sampled gap on the transformed simplex") {
  VIProblem p = to_transformed_coordinates(make_resource_allocation({2.0, 2.0}, 2.0, 0.0));
  Rng rng(3);
  Vec cand = testsupport::sample_point(rng, p.domain(), 1e-2);
  TestDomain C = TestDomain::full_box(4096);
  double sampled = restricted_gap(p, C, cand);
  double grid = restricted_gap_grid(p, C, cand, 4001);
  CHECK(sampled >= -1e-9);
  CHECK(std::abs(sampled - grid) <= 0.02 * std::max(1.0, std::abs(grid)));
}

TEST_CASE("gap estimation survives tight constraint tolerances") {
  // large capacities make off-plane finite-difference probes violate the
  // feasibility tolerance; the estimator must skip them, not abort
  VIProblem p = to_transformed_coordinates(make_resource_allocation({50.0, 50.0}, 2.0, 0.0));
  REQUIRE(p.known_solution().has_value());
  double gap = restricted_gap(p, TestDomain::full_box(1024), *p.known_solution());
  CHECK(gap >= 0.0);
  CHECK(gap < 1e-6);
}

TEST_CASE("gap is non-negative inside the test domain") {
  VIProblem p = make_bilinear(gaussian_matrix(2, 2, 19), Vec(2, 0.0), Vec(2, 0.0), 1.0);
  TestDomain C = TestDomain::full_box(2048);
  Rng rng(41);
  for (int s = 0; s < 20; ++s) {
    Vec cand = testsupport::sample_point(rng, p.domain(), 0.0);
    CHECK(restricted_gap(p, C, cand) >= 0.0);
  }
}

TEST_CASE("gap rejects unusable test domains") {
  VIProblem cov = make_covariance_problem(1, identity_matrix(1));
  CHECK_THROWS_AS(restricted_gap(cov, TestDomain::full_box(16), Vec(2, 0.0)),
                  InvalidConfigError);
  VIProblem p = unit_bilinear();
  CHECK_THROWS_AS(restricted_gap_grid(make_bilinear(identity_matrix(2), Vec(2, 0.0), Vec(2, 0.0), 1.0),
                                      TestDomain::full_box(16), Vec(4, 0.0), 11),
                  InvalidConfigError);  // ambient d = 4 > 3
}

TEST_CASE("wardrop residual") {
  CHECK(wardrop_residual({2.0, 2.0}, {1.0, 1.0}) == 0.0);

  // latencies 1/(2-1.5) = 2 and 1/(2-0.5) = 2/3
  double r = wardrop_residual({2.0, 2.0}, {1.5, 0.5});
  CHECK(r == doctest::Approx(2.0 - 2.0 / 3.0));
  double lat_hi = 1.0 / (2.0 - 1.5), lat_lo = 1.0 / (2.0 - 0.5);
  CHECK(r == doctest::Approx(lat_hi - lat_lo));

  CHECK(wardrop_residual({3.0}, {2.0}) == 0.0);  // single node

  // unloaded nodes are excluded from the max but count toward the min
  CHECK(wardrop_residual({3.0, 1.0}, {2.0, 0.0}) == 0.0);

  CHECK_THROWS_AS(wardrop_residual({2.0, 2.0}, {2.5, -0.5}), InvalidPointError);

  VIProblem p = make_resource_allocation({2.0, 2.0}, 2.0, 0.0);
  CHECK(wardrop_residual(p, {1.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(wardrop_residual(p, {0.5, 0.5}), InvalidPointError);  // wrong inflow
}

TEST_CASE("squared gradient norm") {
  VIProblem p = unit_bilinear();
  CHECK(grad_norm_sq(p, {0.0, 0.0}) == 0.0);
  CHECK(grad_norm_sq(p, {0.3, -0.4}) == doctest::Approx(0.25));

  linalg::Matrix sigma(2, 2);
  sigma(0, 0) = 4.0;
  sigma(1, 1) = 1.0;
  VIProblem cov = make_covariance_problem(2, sigma);
  Vec z(8, 0.0);
  z[0] = 2.0;
  z[3] = 1.0;
  CHECK(grad_norm_sq(cov, z) == 0.0);
}

TEST_CASE("rate fit recovers planted exponents") {
  std::vector<std::pair<std::size_t, double>> inv_n, inv_sqrt;
  for (std::size_t n = 1; n <= 1000; ++n) {
    inv_n.emplace_back(n, 7.0 / double(n));
    inv_sqrt.emplace_back(n, 3.0 / std::sqrt(double(n)));
  }
  RateFit a = fit_rate(inv_n);
  CHECK(a.slope == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(a.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(a.window_first >= 500);

  RateFit b = fit_rate(inv_sqrt);
  CHECK(b.slope == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(std::exp(b.intercept) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("rate fit exclusions and errors") {
  std::vector<std::pair<std::size_t, double>> series;
  for (std::size_t n = 1; n <= 100; ++n)
    series.emplace_back(n, n % 7 == 0 ? 0.0 : 5.0 / double(n));
  RateFit fit = fit_rate(series);
  CHECK(fit.excluded > 0);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-3));

  std::vector<std::pair<std::size_t, double>> zeros;
  for (std::size_t n = 1; n <= 100; ++n) zeros.emplace_back(n, 0.0);
  CHECK_THROWS_AS(fit_rate(zeros), EstimationError);

  std::vector<std::pair<std::size_t, double>> tiny{{1, 1.0}, {2, 0.5}, {3, 0.3}};
  CHECK_THROWS_AS(fit_rate(tiny), EstimationError);
  CHECK_THROWS_AS(fit_rate({}), EstimationError);
}

TEST_CASE("bregman depth") {
  BregmanFunction half = BregmanFunction::half_squared_euclidean(2);
  DomainSpec box = DomainSpec::box({-1, -1}, {1, 1});

  SUBCASE("degenerate set") {
    TestDomain C = TestDomain::neighborhood({0.3, 0.3}, 0.0, 64);
    CHECK(bregman_depth(half, box, C, {0.3, 0.3}) == 0.0);
  }

  SUBCASE("corners of the box attain the supremum") {
    TestDomain C = TestDomain::full_box(1024);
    CHECK(bregman_depth(half, box, C, {0.0, 0.0}) == doctest::Approx(1.0));
  }

  SUBCASE("barrier depth against a lattice supremum") {
    BregmanFunction barrier = BregmanFunction::inverse_barrier(2);
    DomainSpec unit = DomainSpec::open_unit_box(2);
    TestDomain C = TestDomain::neighborhood({0.55, 0.55}, 0.45, 1024);  // [0.1, 1]^2
    Vec x1{0.5, 0.5};
    double depth = bregman_depth(barrier, unit, C, x1);

    double grid_best = 0.0;
    for (int i = 0; i < 201; ++i)
      for (int j = 0; j < 201; ++j) {
        Vec p{0.1 + 0.9 * i / 200.0, 0.1 + 0.9 * j / 200.0};
        grid_best = std::max(grid_best, barrier.divergence(p, x1));
      }
    CHECK(depth == doctest::Approx(grid_best).epsilon(1e-6));
  }
}

TEST_CASE("logarithmic series bound") {
  std::vector<double> ones{1.0, 1.0, 1.0};
  CHECK(adaptive_series_sum(ones) == doctest::Approx(13.0 / 12.0));
  CHECK(adaptive_series_log_bound(ones) == doctest::Approx(1.0 + std::log(4.0)));
  CHECK(adaptive_series_sum(ones) <= adaptive_series_log_bound(ones));

  Rng rng(1618);
  testsupport::CheckStats stats = testsupport::check_log_series_bound(rng, 500, 100);
  CHECK_MESSAGE(stats.ok(), "worst violation ", stats.worst);
  CHECK(stats.samples == 500);

  CHECK_THROWS_AS(adaptive_series_sum({1.0, -0.5}), InvalidConfigError);
}

TEST_SUITE_END();
