#ifndef ADAPROX_ORACLE_HPP
#define ADAPROX_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <memory>

#include "adaprox/problems.hpp"
#include "adaprox/rng.hpp"

namespace adaprox {

struct NoiseSpec {
  enum class Kind { None, GaussianAdditive, MinibatchCovariance };
  Kind kind = Kind::None;
  Vec sigma;              // per-coordinate, GaussianAdditive
  std::size_t batch = 0;  // MinibatchCovariance

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian(Vec sigma_per_coordinate) {
    NoiseSpec n;
    n.kind = Kind::GaussianAdditive;
    n.sigma = std::move(sigma_per_coordinate);
    return n;
  }
  static NoiseSpec gaussian(std::size_t dim, double sigma) {
    return gaussian(Vec(dim, sigma));
  }
};

// First-order oracle: the problem's field plus a configured noise model.
// Owns its RNG stream (derived from seed and problem id), so identical seeds
// and call sequences replay identical signals. Single-owner: concurrent runs
// must construct independent oracles.
class StochasticOracle {
 public:
  StochasticOracle(std::shared_ptr<const VIProblem> base, NoiseSpec noise, std::uint64_t seed);

  Vec evaluate(const Vec& x);

  const VIProblem& problem() const { return *base_; }
  std::shared_ptr<const VIProblem> problem_ptr() const { return base_; }
  const NoiseSpec& noise() const { return noise_; }
  std::uint64_t seed() const { return seed_; }

  // used by make_covariance_game to install the minibatch sampler
  void set_sampler(std::function<Vec(const Vec&, Rng&)> sampler) {
    sampler_ = std::move(sampler);
  }

 private:
  std::shared_ptr<const VIProblem> base_;
  NoiseSpec noise_;
  std::uint64_t seed_;
  Rng rng_;
  std::function<Vec(const Vec&, Rng&)> sampler_;
};

// Covariance-matching game between a linear generator V z and a quadratic
// critic x^T W x: the payoff is tr(W Sigma) - tr(W V V^T). Points pack the
// two d x d matrices row-major as [V, W]. The oracle's minibatch feedback
// replaces Sigma and V V^T by empirical second moments of x ~ N(0, Sigma)
// and of V z, z ~ N(0, I), using `batch` samples of each per evaluation.
StochasticOracle make_covariance_game(std::size_t dim, const linalg::Matrix& covariance,
                                      std::size_t batch, std::uint64_t seed);

// Deterministic counterpart (exact-expectation field), useful for merit
// evaluation and tests.
VIProblem make_covariance_problem(std::size_t dim, const linalg::Matrix& covariance);

}  // namespace adaprox

#endif
