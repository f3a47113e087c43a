#include "adaprox/domain.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "adaprox/errors.hpp"

namespace adaprox {

DomainSpec DomainSpec::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size() || lower.empty())
    throw InvalidConfigError("box domain needs matching non-empty bounds");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i]))
      throw InvalidConfigError("box domain needs lower < upper componentwise");
  DomainSpec d;
  d.kind_ = DomainKind::Box;
  d.dim_ = lower.size();
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  return d;
}

DomainSpec DomainSpec::symmetric_box(std::size_t dim, double radius) {
  if (dim == 0 || !(radius > 0.0))
    throw InvalidConfigError("symmetric box needs dim >= 1 and radius > 0");
  return box(Vec(dim, -radius), Vec(dim, radius));
}

DomainSpec DomainSpec::open_unit_box(std::size_t dim) {
  if (dim == 0) throw InvalidConfigError("open unit box needs dim >= 1");
  DomainSpec d;
  d.kind_ = DomainKind::OpenUnitBoxUpperClosed;
  d.dim_ = dim;
  d.lower_ = Vec(dim, 0.0);
  d.upper_ = Vec(dim, 1.0);
  return d;
}

static void check_simplex_params(const Vec& capacities, double inflow) {
  if (capacities.empty()) throw InvalidConfigError("capacity simplex needs at least one node");
  double total = 0.0;
  for (double c : capacities) {
    if (!(c > 0.0)) throw InvalidConfigError("capacity simplex needs positive capacities");
    total += c;
  }
  if (!(inflow > 0.0 && inflow < total))
    throw InvalidConfigError("capacity simplex needs 0 < inflow < total capacity");
}

DomainSpec DomainSpec::capacity_simplex_loads(Vec capacities, double inflow) {
  check_simplex_params(capacities, inflow);
  DomainSpec d;
  d.kind_ = DomainKind::CapacitySimplex;
  d.dim_ = capacities.size();
  d.capacities_ = std::move(capacities);
  d.inflow_ = inflow;
  d.unit_frame_ = false;
  return d;
}

DomainSpec DomainSpec::capacity_simplex_unit(Vec capacities, double inflow) {
  DomainSpec d = capacity_simplex_loads(std::move(capacities), inflow);
  d.unit_frame_ = true;
  return d;
}

DomainSpec DomainSpec::unconstrained(std::size_t dim) {
  if (dim == 0) throw InvalidConfigError("unconstrained domain needs dim >= 1");
  DomainSpec d;
  d.kind_ = DomainKind::Unconstrained;
  d.dim_ = dim;
  return d;
}

bool DomainSpec::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case DomainKind::Box:
      for (std::size_t i = 0; i < dim_; ++i)
        if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
      return true;
    case DomainKind::OpenUnitBoxUpperClosed:
      for (std::size_t i = 0; i < dim_; ++i)
        if (!(x[i] > 0.0) || x[i] > 1.0 + tol) return false;
      return true;
    case DomainKind::CapacitySimplex: {
      double linear = 0.0;
      if (unit_frame_) {
        for (std::size_t i = 0; i < dim_; ++i) {
          if (!(x[i] > 0.0) || x[i] > 1.0 + tol) return false;
          linear += capacities_[i] * (1.0 - x[i]);
        }
      } else {
        for (std::size_t i = 0; i < dim_; ++i) {
          if (x[i] < -tol || x[i] >= capacities_[i]) return false;
          linear += x[i];
        }
      }
      return std::abs(linear - inflow_) <= tol * std::max(1.0, std::abs(inflow_));
    }
    case DomainKind::Unconstrained:
      return true;
  }
  return false;
}

Vec DomainSpec::center() const {
  switch (kind_) {
    case DomainKind::Box: {
      Vec c(dim_);
      for (std::size_t i = 0; i < dim_; ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
      return c;
    }
    case DomainKind::OpenUnitBoxUpperClosed:
      return Vec(dim_, 0.5);
    case DomainKind::CapacitySimplex: {
      // balanced profile: equal utilization on every node
      double total = std::accumulate(capacities_.begin(), capacities_.end(), 0.0);
      double u = inflow_ / total;
      Vec c(dim_);
      for (std::size_t i = 0; i < dim_; ++i)
        c[i] = unit_frame_ ? 1.0 - u : capacities_[i] * u;
      return c;
    }
    case DomainKind::Unconstrained:
      return Vec(dim_, 0.0);
  }
  return Vec(dim_, 0.0);
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DomainKind::Box:
      os << "box d=" << dim_;
      break;
    case DomainKind::OpenUnitBoxUpperClosed:
      os << "(0,1]^" << dim_;
      break;
    case DomainKind::CapacitySimplex:
      os << (unit_frame_ ? "unit-frame " : "") << "capacity simplex d=" << dim_
         << " inflow=" << inflow_;
      break;
    case DomainKind::Unconstrained:
      os << "R^" << dim_;
      break;
  }
  return os.str();
}

Vec loads_to_unit(const Vec& capacities, const Vec& loads) {
  if (capacities.size() != loads.size())
    throw InvalidPointError("loads_to_unit: dimension mismatch");
  Vec x(loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i) x[i] = 1.0 - loads[i] / capacities[i];
  return x;
}

Vec unit_to_loads(const Vec& capacities, const Vec& unit) {
  if (capacities.size() != unit.size())
    throw InvalidPointError("unit_to_loads: dimension mismatch");
  Vec l(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) l[i] = capacities[i] * (1.0 - unit[i]);
  return l;
}

}  // namespace adaprox
