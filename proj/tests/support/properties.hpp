// Sampled numeric checks of the geometry and solver inequalities, shared by
// the unit tests and the acceptance suite.
#ifndef ADAPROX_TEST_PROPERTIES_HPP
#define ADAPROX_TEST_PROPERTIES_HPP

#include <cstddef>
#include <memory>

#include "adaprox/bregman.hpp"
#include "adaprox/finsler.hpp"
#include "adaprox/problems.hpp"
#include "adaprox/rng.hpp"

namespace testsupport {

struct CheckStats {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest violation (positive means a failed inequality)

  bool ok() const { return failures == 0; }
};

// three-point identity D(b,x') = D(b,x) + D(x,x') + <grad h(x') - grad h(x), x - b>,
// relative tolerance 1e-9
CheckStats check_three_point(const adaprox::BregmanFunction& h,
                             const adaprox::DomainSpec& domain, adaprox::Rng& rng,
                             std::size_t samples, double margin);

// prox descent D(b,x+) <= D(b,x) - D(x+,x) + <y, x+ - b> + 1e-8
CheckStats check_prox_descent(const adaprox::BregmanFunction& h,
                              const adaprox::DomainSpec& domain, adaprox::Rng& rng,
                              std::size_t samples, double margin, double dual_scale);

// two-prox bound D(b,x2+) <= D(b,x) + <y2, x1+ - b> + <y2 - y1, x2+ - x1+>
//                - D(x2+, x1+) - D(x1+, x) + 1e-8
CheckStats check_two_prox(const adaprox::BregmanFunction& h, const adaprox::DomainSpec& domain,
                          adaprox::Rng& rng, std::size_t samples, double margin,
                          double dual_scale);

// per-iteration energy inequality of the mirror extra-gradient step on a
// monotone problem with deterministic feedback, checked against sampled base
// points (slack 1e-7)
CheckStats check_energy_inequality(const adaprox::VIProblem& problem,
                                   const adaprox::FinslerMetric& metric,
                                   const adaprox::BregmanFunction& h, const adaprox::Vec& init,
                                   std::size_t iterations, std::size_t bases,
                                   adaprox::Rng& rng, double margin);

// sum_n a_n / (1 + sum_{i<=n} a_i) <= 1 + log(1 + sum_n a_n) on random
// non-negative sequences
CheckStats check_log_series_bound(adaprox::Rng& rng, std::size_t sequences, std::size_t max_len);

// prox_map against the independent grid/golden-section minimizer on random
// d <= 3 instances over all supported geometry/domain pairings (1e-6)
CheckStats check_prox_vs_oracle(adaprox::Rng& rng, std::size_t instances);

}  // namespace testsupport

#endif
