#include "adaprox/bregman.hpp"

#include <algorithm>
#include <cmath>

#include "adaprox/errors.hpp"

namespace adaprox {

BregmanFunction BregmanFunction::half_squared_euclidean(std::size_t dim) {
  if (dim == 0) throw InvalidConfigError("bregman function needs dim >= 1");
  return BregmanFunction(BregmanKind::HalfSquaredEuclidean, dim, 1.0);
}

BregmanFunction BregmanFunction::inverse_barrier(std::size_t dim) {
  if (dim == 0) throw InvalidConfigError("bregman function needs dim >= 1");
  // D(x',x) >= |x'-x|_x^2 under the inverse-box metric, i.e. modulus 2
  // against the (K/2) convention.
  return BregmanFunction(BregmanKind::InverseBarrier, dim, 2.0);
}

static void require_positive(const Vec& x, const char* who) {
  for (double v : x)
    if (!(v > 0.0)) throw InvalidPointError(std::string(who) + ": needs positive coordinates");
}

double BregmanFunction::value(const Vec& x) const {
  if (x.size() != dim_) throw InvalidPointError("bregman value: dimension mismatch");
  switch (kind_) {
    case BregmanKind::HalfSquaredEuclidean:
      return 0.5 * linalg::norm2_sq(x);
    case BregmanKind::InverseBarrier: {
      require_positive(x, "inverse barrier");
      double s = 0.0;
      for (double v : x) s += 1.0 / v;
      return s;
    }
  }
  return 0.0;
}

Vec BregmanFunction::gradient(const Vec& x) const {
  if (x.size() != dim_) throw InvalidPointError("bregman gradient: dimension mismatch");
  Vec g(dim_);
  switch (kind_) {
    case BregmanKind::HalfSquaredEuclidean:
      g = x;
      break;
    case BregmanKind::InverseBarrier:
      require_positive(x, "inverse barrier");
      for (std::size_t i = 0; i < dim_; ++i) g[i] = -1.0 / (x[i] * x[i]);
      break;
  }
  return g;
}

double BregmanFunction::divergence(const Vec& to, const Vec& from) const {
  if (to.size() != dim_ || from.size() != dim_)
    throw InvalidPointError("bregman divergence: dimension mismatch");
  switch (kind_) {
    case BregmanKind::HalfSquaredEuclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        double d = to[i] - from[i];
        s += d * d;
      }
      return 0.5 * s;
    }
    case BregmanKind::InverseBarrier: {
      require_positive(to, "inverse barrier");
      require_positive(from, "inverse barrier");
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        double d = to[i] - from[i];
        s += d * d / (from[i] * from[i] * to[i]);
      }
      return s;
    }
  }
  return 0.0;
}

bool BregmanFunction::supports(const DomainSpec& domain) const {
  if (domain.dim() != dim_) return false;
  switch (kind_) {
    case BregmanKind::HalfSquaredEuclidean:
      return domain.kind() == DomainKind::Box || domain.kind() == DomainKind::Unconstrained;
    case BregmanKind::InverseBarrier:
      return domain.kind() == DomainKind::OpenUnitBoxUpperClosed ||
             (domain.kind() == DomainKind::CapacitySimplex && domain.unit_frame());
  }
  return false;
}

// Coordinatewise stationary point of the barrier prox objective, clamped to
// the closed upper face. q is 1/x_i^2 - y_i (+ mu c_i on the simplex); the
// unconstrained minimizer q^{-1/2} exceeds 1 exactly when q < 1, and q <= 0
// means the objective decreases all the way to the face.
static inline double barrier_coordinate(double q) { return q > 1.0 ? 1.0 / std::sqrt(q) : 1.0; }

static Vec barrier_prox_simplex(const DomainSpec& domain, const Vec& x, const Vec& y) {
  const Vec& c = domain.capacities();
  const double inflow = domain.inflow();
  const std::size_t d = x.size();

  Vec a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = 1.0 / (x[i] * x[i]) - y[i];

  Vec out(d);
  auto residual = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = barrier_coordinate(a[i] + mu * c[i]);
      s += c[i] * (1.0 - out[i]);
    }
    return s - inflow;
  };

  const double tol = 1e-10;
  const int max_iter = 200;

  // residual is nondecreasing in mu: expand a bracket geometrically
  double lo = -1.0, hi = 1.0;
  double r_lo = residual(lo), r_hi = residual(hi);
  for (int k = 0; k < 200 && r_lo > 0.0; ++k) {
    lo *= 2.0;
    r_lo = residual(lo);
  }
  for (int k = 0; k < 200 && r_hi < 0.0; ++k) {
    hi *= 2.0;
    r_hi = residual(hi);
  }
  if (r_lo > 0.0 || r_hi < 0.0)
    throw NumericalFailureError("capacity-simplex prox: bracketing failed",
                                std::min(std::abs(r_lo), std::abs(r_hi)));

  double r_mid = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    double mid = 0.5 * (lo + hi);
    r_mid = residual(mid);
    if (std::abs(r_mid) <= tol) return out;
    if (r_mid < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  throw NumericalFailureError("capacity-simplex prox: bisection did not converge", r_mid);
}

Vec BregmanFunction::prox(const DomainSpec& domain, const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw InvalidPointError("prox: dimension mismatch");
  if (!supports(domain))
    throw InvalidConfigError("prox: no solver for this bregman/domain pairing (" +
                             domain.describe() + ")");
  if (!domain.contains(x, 1e-6))
    throw InvalidPointError("prox: base point outside domain " + domain.describe());

  switch (kind_) {
    case BregmanKind::HalfSquaredEuclidean: {
      Vec out(dim_);
      if (domain.kind() == DomainKind::Box) {
        for (std::size_t i = 0; i < dim_; ++i)
          out[i] = std::clamp(x[i] + y[i], domain.lower()[i], domain.upper()[i]);
      } else {
        for (std::size_t i = 0; i < dim_; ++i) out[i] = x[i] + y[i];
      }
      return out;
    }
    case BregmanKind::InverseBarrier: {
      require_positive(x, "inverse barrier prox");
      if (domain.kind() == DomainKind::OpenUnitBoxUpperClosed) {
        Vec out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
          out[i] = barrier_coordinate(1.0 / (x[i] * x[i]) - y[i]);
        return out;
      }
      return barrier_prox_simplex(domain, x, y);
    }
  }
  return x;
}

}  // namespace adaprox
