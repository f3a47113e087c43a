#include "adaprox/finsler.hpp"

#include <cmath>

#include "adaprox/errors.hpp"

namespace adaprox {

FinslerMetric FinslerMetric::euclidean(std::size_t dim) {
  if (dim == 0) throw InvalidConfigError("metric needs dim >= 1");
  return FinslerMetric(MetricKind::Euclidean, dim, 0.0, 1.0);
}

FinslerMetric FinslerMetric::inverse_box(std::size_t dim) {
  if (dim == 0) throw InvalidConfigError("metric needs dim >= 1");
  // max_i |t_i|/x_i >= |t|_inf >= |t|_2 / sqrt(d) on (0,1]^d
  return FinslerMetric(MetricKind::InverseBox, dim, 1.0, 1.0 / std::sqrt(double(dim)));
}

static void require_positive(const Vec& x) {
  for (double v : x)
    if (!(v > 0.0))
      throw InvalidPointError("inverse-box metric needs strictly positive coordinates");
}

double FinslerMetric::primal_norm(const Vec& x, const Vec& t) const {
  if (x.size() != dim_ || t.size() != dim_)
    throw InvalidPointError("primal_norm: dimension mismatch");
  switch (kind_) {
    case MetricKind::Euclidean:
      return linalg::norm2(t);
    case MetricKind::InverseBox: {
      require_positive(x);
      double m = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, std::abs(t[i]) / x[i]);
      return m;
    }
  }
  return 0.0;
}

double FinslerMetric::dual_norm(const Vec& x, const Vec& w) const {
  if (x.size() != dim_ || w.size() != dim_)
    throw InvalidPointError("dual_norm: dimension mismatch");
  switch (kind_) {
    case MetricKind::Euclidean:
      return linalg::norm2(w);
    case MetricKind::InverseBox: {
      require_positive(x);
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) s += x[i] * std::abs(w[i]);
      return s;
    }
  }
  return 0.0;
}

}  // namespace adaprox
