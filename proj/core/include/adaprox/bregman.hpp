#ifndef ADAPROX_BREGMAN_HPP
#define ADAPROX_BREGMAN_HPP

#include <cstddef>

#include "adaprox/domain.hpp"
#include "adaprox/linalg.hpp"

namespace adaprox {

enum class BregmanKind {
  HalfSquaredEuclidean,  // h(x) = |x|^2 / 2
  InverseBarrier,        // h(x) = sum_i 1/x_i on positive coordinates
};

// Distance generator h with its gradient, divergence and prox-mapping.
// strong_convexity() is the modulus K in
//   D(x', x) >= (K/2) |x' - x|_x^2
// against the matching local metric (Euclidean for the half-squared norm,
// inverse-box for the barrier).
class BregmanFunction {
 public:
  static BregmanFunction half_squared_euclidean(std::size_t dim);
  static BregmanFunction inverse_barrier(std::size_t dim);

  BregmanKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double strong_convexity() const { return strong_convexity_; }

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;

  // D(to, from) = h(to) - h(from) - <grad h(from), to - from>, in closed form
  double divergence(const Vec& to, const Vec& from) const;

  // argmin over x' in domain of <y, x - x'> + D(x', x). Callers doing a
  // mirror step pass y = -eta * g.
  Vec prox(const DomainSpec& domain, const Vec& x, const Vec& y) const;

  // true when this generator has a prox solver for the given domain
  bool supports(const DomainSpec& domain) const;

 private:
  BregmanFunction(BregmanKind kind, std::size_t dim, double k)
      : kind_(kind), dim_(dim), strong_convexity_(k) {}

  BregmanKind kind_;
  std::size_t dim_;
  double strong_convexity_;
};

}  // namespace adaprox

#endif
