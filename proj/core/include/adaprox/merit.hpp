#ifndef ADAPROX_MERIT_HPP
#define ADAPROX_MERIT_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "adaprox/bregman.hpp"
#include "adaprox/problems.hpp"

namespace adaprox {

// Compact convex test set the restricted gap is taken over: either the whole
// (bounded) domain or a box neighborhood of a reference point intersected
// with the domain.
struct TestDomain {
  enum class Kind { FullBox, ShrunkNeighborhood };
  Kind kind = Kind::FullBox;
  Vec center;           // ShrunkNeighborhood
  double radius = 0.0;  // ShrunkNeighborhood
  std::size_t sample_budget = 4096;
  int refine_starts = 10;
  int refine_steps = 50;

  static TestDomain full_box(std::size_t budget = 4096);
  static TestDomain neighborhood(Vec center, double radius, std::size_t budget = 4096);
};

// Restricted merit gap_C(x) = sup_{p in C} <V(p), x - p>, estimated by
// deterministic low-discrepancy sampling plus local ascent refinement from
// the best samples. One-sided: the estimate never exceeds the true supremum
// beyond field-evaluation roundoff.
double restricted_gap(const VIProblem& problem, const TestDomain& test_domain,
                      const Vec& candidate);

// Brute-force lattice version for d <= 3, used to validate the estimator.
double restricted_gap_grid(const VIProblem& problem, const TestDomain& test_domain,
                           const Vec& candidate, std::size_t points_per_axis);

// Largest latency excess of a loaded node over the best latency anywhere;
// zero exactly at balanced (equilibrium) load profiles. A node counts as
// loaded when l_r > 1e-9 c_r.
double wardrop_residual(const Vec& capacities, const Vec& loads);
double wardrop_residual(const VIProblem& resource_problem, const Vec& loads);

// |V(x)|_2^2 of the deterministic field.
double grad_norm_sq(const VIProblem& problem, const Vec& x);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t window_first = 0;
  std::size_t window_last = 0;
  std::size_t excluded = 0;  // non-positive merit values dropped from the window
};

// Least-squares slope of log m versus log n over the last window_fraction of
// the iteration range. Needs at least 10 positive values in the window.
RateFit fit_rate(const std::vector<std::pair<std::size_t, double>>& series,
                 double window_fraction = 0.5);

// sup_{p in C} D(p, x1), sampled the same way as the gap (plus exact corner
// scans on box-shaped sets, where the convexity of D(., x1) puts the maximum).
double bregman_depth(const BregmanFunction& h, const DomainSpec& domain,
                     const TestDomain& test_domain, const Vec& x1);

// Partial sums sum_n a_n / (1 + sum_{i<=n} a_i) for non-negative a, and the
// logarithmic majorant 1 + log(1 + sum_n a_n) that bounds them. These control
// the step-size-weighted residual sums of the adaptive policy.
double adaptive_series_sum(const std::vector<double>& a);
double adaptive_series_log_bound(const std::vector<double>& a);

}  // namespace adaprox

#endif
