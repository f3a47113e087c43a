#include "support/properties.hpp"

#include <algorithm>
#include <cmath>

#include "adaprox/merit.hpp"
#include "adaprox/oracle.hpp"
#include "adaprox/solvers.hpp"
#include "support/test_oracles.hpp"

namespace testsupport {

using adaprox::BregmanFunction;
using adaprox::BregmanKind;
using adaprox::DomainKind;
using adaprox::DomainSpec;
using adaprox::FinslerMetric;
using adaprox::Rng;
using adaprox::Vec;
using adaprox::VIProblem;
namespace linalg = adaprox::linalg;

namespace {

void record(CheckStats& stats, double violation) {
  stats.samples += 1;
  stats.worst = std::max(stats.worst, violation);
  if (violation > 0.0) stats.failures += 1;
}

}  // namespace

CheckStats check_three_point(const BregmanFunction& h, const DomainSpec& domain, Rng& rng,
                             std::size_t samples, double margin) {
  CheckStats stats;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec b = sample_point(rng, domain, margin);
    Vec x = sample_point(rng, domain, margin);
    Vec xp = sample_point(rng, domain, margin);

    double lhs = h.divergence(b, xp);
    Vec grad_diff = linalg::sub(h.gradient(xp), h.gradient(x));
    double cross = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) cross += grad_diff[i] * (x[i] - b[i]);
    double rhs = h.divergence(b, x) + h.divergence(x, xp) + cross;

    double scale = 1.0 + std::abs(lhs) + std::abs(rhs) + std::abs(cross);
    record(stats, std::abs(lhs - rhs) - 1e-9 * scale);
  }
  return stats;
}

CheckStats check_prox_descent(const BregmanFunction& h, const DomainSpec& domain, Rng& rng,
                              std::size_t samples, double margin, double dual_scale) {
  CheckStats stats;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec b = sample_point(rng, domain, margin);
    Vec x = sample_point(rng, domain, margin);
    Vec y = sample_dual(rng, x.size(), dual_scale);
    Vec xp = h.prox(domain, x, y);

    double cross = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) cross += y[i] * (xp[i] - b[i]);
    double lhs = h.divergence(b, xp);
    double rhs = h.divergence(b, x) - h.divergence(xp, x) + cross;
    record(stats, lhs - rhs - 1e-8);
  }
  return stats;
}

CheckStats check_two_prox(const BregmanFunction& h, const DomainSpec& domain, Rng& rng,
                          std::size_t samples, double margin, double dual_scale) {
  CheckStats stats;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec b = sample_point(rng, domain, margin);
    Vec x = sample_point(rng, domain, margin);
    Vec y1 = sample_dual(rng, x.size(), dual_scale);
    Vec y2 = sample_dual(rng, x.size(), dual_scale);
    Vec x1 = h.prox(domain, x, y1);
    Vec x2 = h.prox(domain, x, y2);

    double t1 = 0.0, t2 = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      t1 += y2[i] * (x1[i] - b[i]);
      t2 += (y2[i] - y1[i]) * (x2[i] - x1[i]);
    }
    double lhs = h.divergence(b, x2);
    double rhs = h.divergence(b, x) + t1 + t2 - h.divergence(x2, x1) - h.divergence(x1, x);
    record(stats, lhs - rhs - 1e-8);
  }
  return stats;
}

CheckStats check_energy_inequality(const VIProblem& problem, const FinslerMetric& metric,
                                   const BregmanFunction& h, const Vec& init,
                                   std::size_t iterations, std::size_t bases, Rng& rng,
                                   double margin) {
  CheckStats stats;
  const DomainSpec& domain = problem.domain();

  std::vector<Vec> base_points;
  for (std::size_t i = 0; i < bases; ++i)
    base_points.push_back(sample_point(rng, domain, margin));

  auto shared = std::make_shared<VIProblem>(problem);
  adaprox::StochasticOracle oracle(shared, adaprox::NoiseSpec::none(), 7);
  adaprox::SolverState state =
      adaprox::SolverState::start(init, adaprox::StepPolicy::adaptive());

  for (std::size_t n = 0; n < iterations; ++n) {
    Vec x_prev = state.x;
    Vec g_prev = problem.field(x_prev);
    adaprox::StepResult r = adaprox_step(state, oracle, metric, h, domain);
    if (r.diverged) break;
    const Vec& lead = state.x_lead;
    const Vec& next = state.x;
    Vec g_lead = problem.field(lead);

    for (const Vec& p : base_points) {
      double inner1 = 0.0, inner2 = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        inner1 += g_lead[i] * (lead[i] - p[i]);
        inner2 += (g_lead[i] - g_prev[i]) * (next[i] - lead[i]);
      }
      // the two-prox bound with y1 = -eta g_n, y2 = -eta g_{n+1/2}: the
      // residual cross-term enters with weight -eta
      double lhs = h.divergence(p, next);
      double rhs = h.divergence(p, x_prev) - r.eta * inner1 - r.eta * inner2 -
                   h.divergence(next, lead) - h.divergence(lead, x_prev);
      record(stats, lhs - rhs - 1e-7);
    }
  }
  return stats;
}

CheckStats check_log_series_bound(Rng& rng, std::size_t sequences, std::size_t max_len) {
  CheckStats stats;
  for (std::size_t s = 0; s < sequences; ++s) {
    std::size_t len = 1 + std::size_t(rng.uniform() * double(max_len));
    std::vector<double> a(len);
    for (double& v : a) v = rng.uniform(0.0, 10.0);
    double lhs = adaprox::adaptive_series_sum(a);
    double rhs = adaprox::adaptive_series_log_bound(a);
    record(stats, lhs - rhs);
  }
  return stats;
}

CheckStats check_prox_vs_oracle(Rng& rng, std::size_t instances) {
  CheckStats stats;
  for (std::size_t s = 0; s < instances; ++s) {
    std::size_t d = 1 + std::size_t(rng.uniform() * 3.0);
    d = std::min<std::size_t>(d, 3);
    int which = int(rng.uniform() * 3.0);

    DomainSpec domain = DomainSpec::unconstrained(1);
    BregmanFunction h = BregmanFunction::half_squared_euclidean(d);
    if (which == 0) {
      Vec lower(d), upper(d);
      for (std::size_t i = 0; i < d; ++i) {
        lower[i] = rng.uniform(-2.0, -0.5);
        upper[i] = rng.uniform(0.5, 2.0);
      }
      domain = DomainSpec::box(lower, upper);
    } else if (which == 1) {
      domain = DomainSpec::open_unit_box(d);
      h = BregmanFunction::inverse_barrier(d);
    } else {
      Vec capacities(d);
      double total = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        capacities[i] = rng.uniform(1.0, 3.0);
        total += capacities[i];
      }
      domain = DomainSpec::capacity_simplex_unit(capacities, rng.uniform(0.2, 0.8) * total);
      h = BregmanFunction::inverse_barrier(d);
    }

    Vec x = sample_point(rng, domain, 0.05);
    Vec y = sample_dual(rng, d, 2.0);
    Vec fast = h.prox(domain, x, y);
    Vec slow = numeric_prox(h, domain, x, y);

    double err = 0.0;
    for (std::size_t i = 0; i < d; ++i) err = std::max(err, std::abs(fast[i] - slow[i]));
    record(stats, err - 1e-6);
  }
  return stats;
}

}  // namespace testsupport
