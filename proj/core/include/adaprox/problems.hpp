#ifndef ADAPROX_PROBLEMS_HPP
#define ADAPROX_PROBLEMS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "adaprox/domain.hpp"
#include "adaprox/linalg.hpp"

namespace adaprox {

// Regularity metadata for a vector field. metric_* constants are measured in
// the problem's natural local norms, euclidean_* in the global L2 norm.
struct Regularity {
  bool is_monotone = false;
  std::optional<double> metric_bound;          // sup |V(x)|_{x,*}
  std::optional<double> metric_smoothness;     // |V(x')-V(x)|_{x,*} <= L |x'-x|_{x'}
  std::optional<double> euclidean_bound;       // sup |V(x)|
  std::optional<double> euclidean_smoothness;  // Lipschitz modulus of V
};

// A variational-inequality instance: find x* in the domain with
// <V(x*), x - x*> >= 0 for all feasible x.
class VIProblem {
 public:
  using FieldFn = std::function<Vec(const Vec&)>;

  VIProblem(std::string name, DomainSpec domain, FieldFn field, Regularity regularity,
            std::optional<Vec> known_solution = std::nullopt);

  const std::string& name() const { return name_; }
  const DomainSpec& domain() const { return domain_; }
  const Regularity& regularity() const { return regularity_; }
  const std::optional<Vec>& known_solution() const { return known_solution_; }

  // evaluates V(x); rejects points outside the domain
  Vec field(const Vec& x) const;

  // numeric parameters recorded by the factory (e.g. "lambda" for the
  // resource-allocation family)
  const std::map<std::string, double>& attributes() const { return attributes_; }
  void set_attribute(const std::string& key, double value) { attributes_[key] = value; }

 private:
  std::string name_;
  DomainSpec domain_;
  FieldFn field_;
  Regularity regularity_;
  std::optional<Vec> known_solution_;
  std::map<std::string, double> attributes_;
};

// Dense matrix with i.i.d. N(0, scale^2) entries, reproducible from the seed.
linalg::Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                               double scale = 1.0);

// Two-player bilinear saddle game (theta - theta*)^T M (phi - phi*) clipped to
// a symmetric box; the field is (M(phi - phi*), -M^T(theta - theta*)).
VIProblem make_bilinear(const linalg::Matrix& coupling, const Vec& theta_star,
                        const Vec& phi_star, double box_radius);
VIProblem make_bilinear(std::size_t dim, std::uint64_t matrix_seed, const Vec& theta_star,
                        const Vec& phi_star, double box_radius, double matrix_scale = 1.0);

// Coordinatewise sign field g * sgn(x_i - x*_i) with sgn(0) = 0: the
// subgradient field of a scaled L1 loss, the canonical non-smooth benchmark.
VIProblem make_sign_field(std::size_t dim, double g_scale, const Vec& x_star,
                          double box_radius);

// Parallel-queue load balancing: latencies 1/(c_r - l_r) plus an activation
// penalty lambda on loaded nodes, over the capacity simplex.
VIProblem make_resource_allocation(const Vec& capacities, double inflow, double lambda_reg);

// Change of variables x_r = 1 - l_r / c_r onto (0,1]^d. By default the field
// is -1/x_r - lambda 1{x_r < 1}, the form whose metric bounds are G = d(1+l)
// and L = d; jacobian_scaling instead multiplies the activation penalty by
// c_r so the field is the exact pullback of the loads-frame field.
VIProblem to_transformed_coordinates(const VIProblem& problem, bool jacobian_scaling = false);

// Balanced (equal-latency) load profile, solved by water-filling bisection.
// Defined for the unregularized problem (lambda = 0).
Vec balanced_loads(const Vec& capacities, double inflow);

}  // namespace adaprox

#endif
