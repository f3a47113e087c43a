#include "adaprox/problems.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "adaprox/errors.hpp"
#include "adaprox/rng.hpp"

namespace adaprox {

VIProblem::VIProblem(std::string name, DomainSpec domain, FieldFn field, Regularity regularity,
                     std::optional<Vec> known_solution)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      field_(std::move(field)),
      regularity_(regularity),
      known_solution_(std::move(known_solution)) {
  if (!field_) throw InvalidConfigError("VIProblem needs a field evaluator");
}

Vec VIProblem::field(const Vec& x) const {
  if (!domain_.contains(x, 1e-6))
    throw InvalidPointError("field of '" + name_ + "': point outside " + domain_.describe());
  return field_(x);
}

linalg::Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                               double scale) {
  linalg::Matrix m(rows, cols);
  Rng rng(mix_seed(seed, 0x6d61747269780000ULL));
  for (double& v : m.data) v = scale * rng.normal();
  return m;
}

static double largest_singular_value(const linalg::Matrix& m) {
  Eigen::MatrixXd em(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) em(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(em);
  return svd.singularValues()(0);
}

VIProblem make_bilinear(const linalg::Matrix& coupling, const Vec& theta_star,
                        const Vec& phi_star, double box_radius) {
  const std::size_t d = coupling.rows;
  if (d == 0 || coupling.cols != d)
    throw InvalidConfigError("bilinear game needs a square coupling matrix");
  if (theta_star.size() != d || phi_star.size() != d)
    throw InvalidConfigError("bilinear game: saddle point has wrong dimension");
  if (!(box_radius > 0.0)) throw InvalidConfigError("bilinear game needs box_radius > 0");
  for (std::size_t i = 0; i < d; ++i)
    if (std::abs(theta_star[i]) >= box_radius || std::abs(phi_star[i]) >= box_radius)
      throw InvalidConfigError("bilinear game: saddle point must be strictly inside the box");

  Vec solution(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    solution[i] = theta_star[i];
    solution[d + i] = phi_star[i];
  }

  auto field = [coupling, theta_star, phi_star, d](const Vec& x) {
    Vec dtheta(d), dphi(d);
    for (std::size_t i = 0; i < d; ++i) {
      dtheta[i] = x[i] - theta_star[i];
      dphi[i] = x[d + i] - phi_star[i];
    }
    Vec top = coupling.apply(dphi);             // M (phi - phi*)
    Vec bot = coupling.apply_transpose(dtheta);  // M^T (theta - theta*)
    Vec v(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = top[i];
      v[d + i] = -bot[i];
    }
    return v;
  };

  Regularity reg;
  reg.is_monotone = true;
  reg.euclidean_smoothness = largest_singular_value(coupling);

  std::ostringstream name;
  name << "bilinear-d" << d;
  return VIProblem(name.str(), DomainSpec::symmetric_box(2 * d, box_radius), field, reg,
                   solution);
}

VIProblem make_bilinear(std::size_t dim, std::uint64_t matrix_seed, const Vec& theta_star,
                        const Vec& phi_star, double box_radius, double matrix_scale) {
  return make_bilinear(gaussian_matrix(dim, dim, matrix_seed, matrix_scale), theta_star,
                       phi_star, box_radius);
}

VIProblem make_sign_field(std::size_t dim, double g_scale, const Vec& x_star,
                          double box_radius) {
  if (dim == 0 || !(g_scale > 0.0) || !(box_radius > 0.0))
    throw InvalidConfigError("sign field needs dim >= 1, g_scale > 0, box_radius > 0");
  if (x_star.size() != dim) throw InvalidConfigError("sign field: x_star has wrong dimension");
  for (double v : x_star)
    if (std::abs(v) >= box_radius)
      throw InvalidConfigError("sign field: x_star must be strictly inside the box");

  auto field = [g_scale, x_star, dim](const Vec& x) {
    Vec v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      double d = x[i] - x_star[i];
      v[i] = d > 0.0 ? g_scale : (d < 0.0 ? -g_scale : 0.0);
    }
    return v;
  };

  Regularity reg;
  reg.is_monotone = true;
  reg.euclidean_bound = g_scale * std::sqrt(double(dim));

  std::ostringstream name;
  name << "sign-d" << dim;
  return VIProblem(name.str(), DomainSpec::symmetric_box(dim, box_radius), field, reg, x_star);
}

Vec balanced_loads(const Vec& capacities, double inflow) {
  double total = std::accumulate(capacities.begin(), capacities.end(), 0.0);
  if (!(inflow > 0.0 && inflow < total))
    throw InvalidConfigError("balanced_loads needs 0 < inflow < total capacity");

  // total served load sum_r max(0, c_r - 1/tau) is increasing in the common
  // latency tau; bisect it
  auto served = [&](double tau) {
    double s = 0.0;
    for (double c : capacities) s += std::max(0.0, c - 1.0 / tau);
    return s;
  };
  double lo = 1e-12, hi = 1.0;
  while (served(lo) > inflow) lo *= 0.5;
  while (served(hi) < inflow) hi *= 2.0;
  for (int it = 0; it < 300; ++it) {
    double mid = 0.5 * (lo + hi);
    if (served(mid) < inflow)
      lo = mid;
    else
      hi = mid;
  }
  double tau = 0.5 * (lo + hi);
  Vec loads(capacities.size());
  for (std::size_t i = 0; i < capacities.size(); ++i)
    loads[i] = std::max(0.0, capacities[i] - 1.0 / tau);
  return loads;
}

VIProblem make_resource_allocation(const Vec& capacities, double inflow, double lambda_reg) {
  if (lambda_reg < 0.0) throw InvalidConfigError("resource allocation needs lambda >= 0");
  DomainSpec domain = DomainSpec::capacity_simplex_loads(capacities, inflow);
  const std::size_t d = capacities.size();

  auto field = [capacities, lambda_reg, d](const Vec& loads) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i) {
      double slack = capacities[i] - loads[i];
      v[i] = 1.0 / slack + (loads[i] > 0.0 ? lambda_reg : 0.0);
    }
    return v;
  };

  Regularity reg;
  reg.is_monotone = true;
  // bounds of the unit-frame field under the inverse-box metric
  reg.metric_bound = double(d) * (1.0 + lambda_reg);
  if (lambda_reg == 0.0) reg.metric_smoothness = double(d);

  std::optional<Vec> solution;
  if (lambda_reg == 0.0) solution = balanced_loads(capacities, inflow);

  std::ostringstream name;
  name << "resource-allocation-d" << d;
  VIProblem p(name.str(), std::move(domain), field, reg, std::move(solution));
  p.set_attribute("lambda", lambda_reg);
  return p;
}

VIProblem to_transformed_coordinates(const VIProblem& problem, bool jacobian_scaling) {
  const DomainSpec& src = problem.domain();
  if (src.kind() != DomainKind::CapacitySimplex || src.unit_frame() ||
      !problem.attributes().count("lambda"))
    throw InvalidConfigError(
        "to_transformed_coordinates expects a loads-frame resource-allocation problem");

  const Vec capacities = src.capacities();
  const double lambda_reg = problem.attributes().at("lambda");
  const std::size_t d = capacities.size();

  Vec penalty(d, lambda_reg);
  if (jacobian_scaling)
    for (std::size_t i = 0; i < d; ++i) penalty[i] = lambda_reg * capacities[i];

  auto field = [penalty, d](const Vec& x) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i)
      v[i] = -1.0 / x[i] - (x[i] < 1.0 ? penalty[i] : 0.0);
    return v;
  };

  Regularity reg;
  reg.is_monotone = true;
  reg.metric_bound = double(d) * (1.0 + lambda_reg);
  if (lambda_reg == 0.0) reg.metric_smoothness = double(d);

  std::optional<Vec> solution;
  if (problem.known_solution()) solution = loads_to_unit(capacities, *problem.known_solution());

  VIProblem p(problem.name() + "-transformed",
              DomainSpec::capacity_simplex_unit(capacities, src.inflow()), field, reg,
              std::move(solution));
  p.set_attribute("lambda", lambda_reg);
  p.set_attribute("jacobian_scaling", jacobian_scaling ? 1.0 : 0.0);
  return p;
}

}  // namespace adaprox
