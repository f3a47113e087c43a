#include "adaprox/merit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "adaprox/errors.hpp"

namespace adaprox {

TestDomain TestDomain::full_box(std::size_t budget) {
  TestDomain t;
  t.kind = Kind::FullBox;
  t.sample_budget = budget;
  return t;
}

TestDomain TestDomain::neighborhood(Vec center, double radius, std::size_t budget) {
  if (radius < 0.0) throw InvalidConfigError("test domain needs radius >= 0");
  TestDomain t;
  t.kind = Kind::ShrunkNeighborhood;
  t.center = std::move(center);
  t.radius = radius;
  t.sample_budget = budget;
  return t;
}

namespace {

constexpr int kPrimes[32] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,  37,  41,  43, 47, 53,
                             59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::size_t index, int base) {
  double inv = 1.0 / base, frac = inv, value = 0.0;
  while (index > 0) {
    value += double(index % base) * frac;
    index /= base;
    frac *= inv;
  }
  return value;
}

// Resolved sampling region: a box, plus an optional linear constraint for
// capacity simplices (sum c_i x_i = target in the unit frame).
struct Region {
  Vec lower, upper;
  bool simplex = false;
  Vec capacities;
  double target = 0.0;  // sum c_i x_i

  std::size_t dim() const { return lower.size(); }

  // exact one-pass correction onto the constraint plane, staying in (0,1]^d
  void snap(Vec& x) const {
    if (!simplex) return;
    double cur = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) cur += capacities[i] * x[i];
    double need = target - cur;
    if (std::abs(need) < 1e-15 * std::max(1.0, std::abs(target))) return;
    if (need > 0.0) {
      double room = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) room += capacities[i] * (1.0 - x[i]);
      double t = room > 0.0 ? std::min(1.0, need / room) : 0.0;
      for (double& v : x) v += t * (1.0 - v);
    } else {
      double mass = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) mass += capacities[i] * x[i];
      double t = mass > 0.0 ? std::min(1.0, -need / mass) : 0.0;
      for (double& v : x) v -= t * v;
    }
  }

  void clip(Vec& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    snap(x);
  }
};

Region resolve_region(const DomainSpec& domain, const TestDomain& c) {
  Region r;
  const std::size_t d = domain.dim();
  if (d > 32) throw InvalidConfigError("test-domain sampling supports dim <= 32");

  switch (domain.kind()) {
    case DomainKind::Box:
      r.lower = domain.lower();
      r.upper = domain.upper();
      break;
    case DomainKind::OpenUnitBoxUpperClosed:
      // keep a hair away from the singular face so fields stay evaluable
      r.lower = Vec(d, 1e-12);
      r.upper = Vec(d, 1.0);
      break;
    case DomainKind::CapacitySimplex: {
      if (!domain.unit_frame())
        throw InvalidConfigError("gap sampling of loads-frame simplices is not supported; "
                                 "use the unit-frame problem");
      r.lower = Vec(d, 1e-12);
      r.upper = Vec(d, 1.0);
      r.simplex = true;
      r.capacities = domain.capacities();
      double total = 0.0;
      for (double cap : r.capacities) total += cap;
      r.target = total - domain.inflow();
      break;
    }
    case DomainKind::Unconstrained:
      if (c.kind != TestDomain::Kind::ShrunkNeighborhood)
        throw InvalidConfigError("an unbounded domain needs a neighborhood test domain");
      r.lower = Vec(d, 0.0);
      r.upper = Vec(d, 0.0);
      break;
  }

  if (c.kind == TestDomain::Kind::ShrunkNeighborhood) {
    if (c.center.size() != d) throw InvalidConfigError("test domain center has wrong dimension");
    if (domain.kind() == DomainKind::Unconstrained) {
      r.lower.resize(d);
      r.upper.resize(d);
      for (std::size_t i = 0; i < d; ++i) {
        r.lower[i] = c.center[i] - c.radius;
        r.upper[i] = c.center[i] + c.radius;
      }
    } else {
      for (std::size_t i = 0; i < d; ++i) {
        r.lower[i] = std::max(r.lower[i], c.center[i] - c.radius);
        r.upper[i] = std::min(r.upper[i], c.center[i] + c.radius);
        if (r.lower[i] > r.upper[i]) r.lower[i] = r.upper[i];
      }
    }
  }
  return r;
}

std::vector<Vec> halton_points(const Region& r, std::size_t count) {
  const std::size_t d = r.dim();
  std::vector<Vec> pts;
  pts.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    Vec p(d);
    for (std::size_t i = 0; i < d; ++i)
      p[i] = r.lower[i] + (r.upper[i] - r.lower[i]) * radical_inverse(k, kPrimes[i]);
    r.snap(p);
    pts.push_back(std::move(p));
  }
  return pts;
}

// Maximize `f` over the region: low-discrepancy samples, corner scan when
// affordable, then projected forward-difference ascent from the best starts.
double maximize_over_region(const Region& r, const TestDomain& c,
                            const std::function<double(const Vec&)>& f,
                            const std::vector<Vec>& extra_points) {
  const std::size_t d = r.dim();

  std::vector<std::pair<double, Vec>> scored;
  auto consider = [&](Vec p) {
    double v = f(p);
    if (std::isfinite(v)) scored.emplace_back(v, std::move(p));
  };

  for (Vec& p : halton_points(r, c.sample_budget)) consider(std::move(p));
  for (const Vec& p : extra_points) {
    Vec q = p;
    r.clip(q);
    consider(std::move(q));
  }

  // corners are exact maximizers for functions convex or affine in p
  if (!r.simplex && d <= 12) {
    for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
      Vec p(d);
      for (std::size_t i = 0; i < d; ++i)
        p[i] = (mask >> i) & 1 ? r.upper[i] : r.lower[i];
      consider(std::move(p));
    }
  }

  if (scored.empty()) throw InvalidConfigError("test domain produced no usable samples");

  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = scored.front().first;

  Vec span(d);
  double max_span = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    span[i] = r.upper[i] - r.lower[i];
    max_span = std::max(max_span, span[i]);
  }
  if (max_span == 0.0) return best;

  const int starts = std::min<int>(c.refine_starts, int(scored.size()));
  for (int s = 0; s < starts; ++s) {
    Vec p = scored[s].second;
    double fp = scored[s].first;
    double step = 0.1 * max_span;
    Vec grad(d);
    for (int it = 0; it < c.refine_steps && step > 1e-16 * max_span; ++it) {
      for (std::size_t i = 0; i < d; ++i) {
        if (span[i] == 0.0) {
          grad[i] = 0.0;
          continue;
        }
        double h = 1e-7 * span[i];
        Vec q = p;
        if (q[i] + h <= r.upper[i]) {
          q[i] += h;
          grad[i] = (f(q) - fp) / h;
        } else {
          q[i] -= h;
          grad[i] = (fp - f(q)) / h;
        }
      }
      double gn = linalg::norm2(grad);
      if (!(gn > 0.0) || !std::isfinite(gn)) {
        step *= 0.5;
        continue;
      }
      Vec q = p;
      linalg::add_scaled(q, step / gn, grad);
      r.clip(q);
      double fq = f(q);
      if (std::isfinite(fq) && fq > fp) {
        p = std::move(q);
        fp = fq;
        step = std::min(step * 1.3, 0.5 * max_span);
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, fp);
  }
  return best;
}

}  // namespace

double restricted_gap(const VIProblem& problem, const TestDomain& test_domain,
                      const Vec& candidate) {
  const DomainSpec& domain = problem.domain();
  if (candidate.size() != domain.dim())
    throw InvalidPointError("restricted_gap: candidate has wrong dimension");
  Region region = resolve_region(domain, test_domain);

  // finite-difference probes may step a hair off constrained sets; score
  // such points as unusable rather than aborting the estimate
  auto objective = [&](const Vec& p) {
    try {
      Vec v = problem.field(p);
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) s += v[i] * (candidate[i] - p[i]);
      return s;
    } catch (const InvalidPointError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  // seeding with the candidate itself pins gap(x) >= 0 for feasible x
  std::vector<Vec> extra;
  extra.push_back(candidate);
  return maximize_over_region(region, test_domain, objective, extra);
}

double restricted_gap_grid(const VIProblem& problem, const TestDomain& test_domain,
                           const Vec& candidate, std::size_t points_per_axis) {
  const DomainSpec& domain = problem.domain();
  const std::size_t d = domain.dim();
  if (d > 3) throw InvalidConfigError("restricted_gap_grid supports d <= 3");
  if (points_per_axis < 2) throw InvalidConfigError("restricted_gap_grid needs >= 2 points");
  Region region = resolve_region(domain, test_domain);

  auto objective = [&](const Vec& p) {
    try {
      Vec v = problem.field(p);
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) s += v[i] * (candidate[i] - p[i]);
      return s;
    } catch (const InvalidPointError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  double best = -std::numeric_limits<double>::infinity();
  // on a simplex the last coordinate is pinned by the constraint, so the
  // lattice runs over the d-1 free coordinates only
  const std::size_t free_dims = region.simplex ? d - 1 : d;
  std::size_t total = 1;
  for (std::size_t i = 0; i < free_dims; ++i) total *= points_per_axis;
  Vec p(d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t i = 0; i < free_dims; ++i) {
      std::size_t k = rem % points_per_axis;
      rem /= points_per_axis;
      p[i] = region.lower[i] +
             (region.upper[i] - region.lower[i]) * double(k) / double(points_per_axis - 1);
    }
    if (region.simplex) {
      double s = region.target;
      for (std::size_t i = 0; i + 1 < d; ++i) s -= region.capacities[i] * p[i];
      p[d - 1] = s / region.capacities[d - 1];
      if (p[d - 1] < region.lower[d - 1] || p[d - 1] > region.upper[d - 1]) continue;
    }
    double v = objective(p);
    if (std::isfinite(v)) best = std::max(best, v);
  }
  if (!std::isfinite(best))
    throw InvalidConfigError("restricted_gap_grid: no feasible lattice points");
  return best;
}

double wardrop_residual(const Vec& capacities, const Vec& loads) {
  if (capacities.size() != loads.size() || capacities.empty())
    throw InvalidPointError("wardrop_residual: dimension mismatch");
  double best_latency = std::numeric_limits<double>::infinity();
  double worst_loaded = 0.0;
  bool any_loaded = false;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (loads[i] < -1e-9 || loads[i] >= capacities[i])
      throw InvalidPointError("wardrop_residual: infeasible load profile");
    double latency = 1.0 / (capacities[i] - loads[i]);
    best_latency = std::min(best_latency, latency);
    if (loads[i] > 1e-9 * capacities[i]) {
      worst_loaded = std::max(worst_loaded, latency);
      any_loaded = true;
    }
  }
  if (!any_loaded) return 0.0;
  return std::max(0.0, worst_loaded - best_latency);
}

double wardrop_residual(const VIProblem& resource_problem, const Vec& loads) {
  const DomainSpec& domain = resource_problem.domain();
  if (domain.kind() != DomainKind::CapacitySimplex)
    throw InvalidConfigError("wardrop_residual needs a capacity-simplex problem");
  DomainSpec loads_frame =
      DomainSpec::capacity_simplex_loads(domain.capacities(), domain.inflow());
  if (!loads_frame.contains(loads, 1e-6))
    throw InvalidPointError("wardrop_residual: loads violate the capacity simplex");
  return wardrop_residual(domain.capacities(), loads);
}

double grad_norm_sq(const VIProblem& problem, const Vec& x) {
  return linalg::norm2_sq(problem.field(x));
}

RateFit fit_rate(const std::vector<std::pair<std::size_t, double>>& series,
                 double window_fraction) {
  if (series.empty()) throw EstimationError("fit_rate: empty merit series");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw EstimationError("fit_rate: window_fraction must lie in (0, 1]");

  std::size_t n_max = 0;
  for (const auto& [n, m] : series) n_max = std::max(n_max, n);
  const double cutoff = double(n_max) * (1.0 - window_fraction);

  RateFit fit;
  fit.window_first = n_max;
  fit.window_last = 0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, m] : series) {
    if (double(n) < cutoff) continue;
    if (!(m > 0.0) || !std::isfinite(m)) {
      fit.excluded += 1;
      continue;
    }
    pts.emplace_back(std::log(double(n)), std::log(m));
    fit.window_first = std::min(fit.window_first, n);
    fit.window_last = std::max(fit.window_last, n);
  }
  if (pts.size() < 10)
    throw EstimationError("fit_rate: needs at least 10 positive merit values in the window");

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double k = double(pts.size());
  const double vx = sxx - sx * sx / k;
  const double vy = syy - sy * sy / k;
  const double cxy = sxy - sx * sy / k;
  if (!(vx > 0.0)) throw EstimationError("fit_rate: degenerate iteration window");
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / k;
  fit.r_squared = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
  return fit;
}

double bregman_depth(const BregmanFunction& h, const DomainSpec& domain,
                     const TestDomain& test_domain, const Vec& x1) {
  if (x1.size() != domain.dim())
    throw InvalidPointError("bregman_depth: reference point has wrong dimension");
  Region region = resolve_region(domain, test_domain);
  auto objective = [&](const Vec& p) { return h.divergence(p, x1); };
  return maximize_over_region(region, test_domain, objective, {});
}

double adaptive_series_sum(const std::vector<double>& a) {
  double prefix = 0.0, total = 0.0;
  for (double v : a) {
    if (v < 0.0) throw InvalidConfigError("adaptive_series_sum needs non-negative terms");
    prefix += v;
    total += v / (1.0 + prefix);
  }
  return total;
}

double adaptive_series_log_bound(const std::vector<double>& a) {
  double sum = 0.0;
  for (double v : a) {
    if (v < 0.0) throw InvalidConfigError("adaptive_series_log_bound needs non-negative terms");
    sum += v;
  }
  return 1.0 + std::log(1.0 + sum);
}

}  // namespace adaprox
