#ifndef ADAPROX_FINSLER_HPP
#define ADAPROX_FINSLER_HPP

#include <cstddef>

#include "adaprox/linalg.hpp"

namespace adaprox {

enum class MetricKind {
  Euclidean,   // point-independent |t|_2
  InverseBox,  // |t|_x = max_i |t_i| / x_i on positive-coordinate domains
};

// Family of local norms |.|_x and their duals |.|_{x,*}. The regularity
// constant beta bounds how fast the dual norm drifts between base points:
// |w|_{x',*} / |w|_{x,*} <= 1 + beta (|x-x'|_x + |x-x'|_{x'}); nu is a global
// floor |t|_x >= nu |t|_2.
class FinslerMetric {
 public:
  static FinslerMetric euclidean(std::size_t dim);
  static FinslerMetric inverse_box(std::size_t dim);

  MetricKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double beta() const { return beta_; }
  double nu() const { return nu_; }

  double primal_norm(const Vec& x, const Vec& t) const;
  double dual_norm(const Vec& x, const Vec& w) const;

 private:
  FinslerMetric(MetricKind kind, std::size_t dim, double beta, double nu)
      : kind_(kind), dim_(dim), beta_(beta), nu_(nu) {}

  MetricKind kind_;
  std::size_t dim_;
  double beta_;
  double nu_;
};

}  // namespace adaprox

#endif
