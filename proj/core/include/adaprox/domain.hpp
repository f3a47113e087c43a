#ifndef ADAPROX_DOMAIN_HPP
#define ADAPROX_DOMAIN_HPP

#include <cstddef>
#include <string>

#include "adaprox/linalg.hpp"

namespace adaprox {

enum class DomainKind {
  Box,                     // [lower_i, upper_i] per coordinate
  OpenUnitBoxUpperClosed,  // (0, 1]^d
  CapacitySimplex,         // capacity-constrained loads, or its unit-box image
  Unconstrained,           // all of R^d
};

// Feasible-set description. A CapacitySimplex carries two coordinate frames:
// the loads frame {0 <= l_r < c_r, sum l = R} and the unit frame
// {x in (0,1]^d : sum c_r (1 - x_r) = R} reached by x_r = 1 - l_r / c_r.
class DomainSpec {
 public:
  static DomainSpec box(Vec lower, Vec upper);
  static DomainSpec symmetric_box(std::size_t dim, double radius);
  static DomainSpec open_unit_box(std::size_t dim);
  static DomainSpec capacity_simplex_loads(Vec capacities, double inflow);
  static DomainSpec capacity_simplex_unit(Vec capacities, double inflow);
  static DomainSpec unconstrained(std::size_t dim);

  DomainKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool bounded() const { return kind_ != DomainKind::Unconstrained; }

  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  const Vec& capacities() const { return capacities_; }
  double inflow() const { return inflow_; }
  // true when a CapacitySimplex is expressed in the unit frame
  bool unit_frame() const { return unit_frame_; }

  bool contains(const Vec& x, double tol = 1e-9) const;
  // a canonical feasible point (box center, balanced loads, ...)
  Vec center() const;
  std::string describe() const;

 private:
  DomainSpec() = default;

  DomainKind kind_ = DomainKind::Unconstrained;
  std::size_t dim_ = 0;
  Vec lower_, upper_;    // Box
  Vec capacities_;       // CapacitySimplex
  double inflow_ = 0.0;  // CapacitySimplex
  bool unit_frame_ = false;
};

// Coordinate maps between the two CapacitySimplex frames.
Vec loads_to_unit(const Vec& capacities, const Vec& loads);
Vec unit_to_loads(const Vec& capacities, const Vec& unit);

}  // namespace adaprox

#endif
