#include "adaprox/solvers.hpp"

#include <cmath>

#include "adaprox/errors.hpp"

namespace adaprox {

namespace {
constexpr double kDivergenceNorm = 1e8;
}

StepPolicy StepPolicy::constant(double eta) {
  if (!(eta > 0.0)) throw InvalidConfigError("constant step policy needs eta > 0");
  return StepPolicy(Kind::Constant, eta);
}

StepPolicy StepPolicy::inverse_sqrt(double c) {
  if (!(c > 0.0)) throw InvalidConfigError("inverse-sqrt step policy needs c > 0");
  return StepPolicy(Kind::InverseSqrt, c);
}

StepPolicy StepPolicy::adaptive() { return StepPolicy(Kind::Adaptive, 0.0); }

double StepPolicy::step_for(std::size_t n) const {
  switch (kind_) {
    case Kind::Constant:
      return parameter_;
    case Kind::InverseSqrt:
      return parameter_ / std::sqrt(double(n));
    case Kind::Adaptive:
      return current_;
  }
  return current_;
}

void StepPolicy::absorb(double delta) {
  sum_delta_sq_ += delta * delta;
  if (kind_ == Kind::Adaptive) current_ = 1.0 / std::sqrt(1.0 + sum_delta_sq_);
}

SolverState SolverState::start(Vec x0, StepPolicy policy) {
  SolverState s{std::move(x0), {}, 1, {}, 0.0, policy};
  s.x_lead = s.x;
  s.avg_num = Vec(s.x.size(), 0.0);
  return s;
}

Vec SolverState::ergodic_average() const {
  if (avg_den <= 0.0) return x;
  return linalg::scaled(avg_num, 1.0 / avg_den);
}

static bool iterate_ok(const Vec& v) {
  return linalg::all_finite(v) && linalg::norm2(v) <= kDivergenceNorm;
}

StepResult adaprox_step(SolverState& state, StochasticOracle& oracle,
                        const FinslerMetric& metric, const BregmanFunction& bregman,
                        const DomainSpec& domain) {
  const double eta = state.policy.step_for(state.n);

  Vec g0 = oracle.evaluate(state.x);
  Vec lead = bregman.prox(domain, state.x, linalg::scaled(g0, -eta));
  state.x_lead = lead;
  if (!iterate_ok(lead)) return {eta, 0.0, true};

  Vec g1 = oracle.evaluate(lead);
  Vec next = bregman.prox(domain, state.x, linalg::scaled(g1, -eta));
  double delta = metric.dual_norm(lead, linalg::sub(g1, g0));

  if (!iterate_ok(next) || !std::isfinite(delta)) return {eta, delta, true};

  state.policy.absorb(delta);
  linalg::add_scaled(state.avg_num, eta, lead);
  state.avg_den += eta;
  state.x = std::move(next);
  state.n += 1;
  return {eta, delta, false};
}

StepResult eg_step(SolverState& state, StochasticOracle& oracle, const DomainSpec& domain) {
  if (domain.kind() != DomainKind::Box && domain.kind() != DomainKind::Unconstrained)
    throw InvalidConfigError("eg_step needs a box or unconstrained domain");
  FinslerMetric metric = FinslerMetric::euclidean(domain.dim());
  BregmanFunction h = BregmanFunction::half_squared_euclidean(domain.dim());
  return adaprox_step(state, oracle, metric, h, domain);
}

StepPolicy AlgorithmSpec::make_policy() const {
  switch (kind) {
    case AlgoKind::EgConstant:
      return StepPolicy::constant(eta);
    case AlgoKind::EgInvSqrt:
      return StepPolicy::inverse_sqrt(c);
    case AlgoKind::EgAdaptive:
    case AlgoKind::AdaProx:
      return StepPolicy::adaptive();
  }
  return StepPolicy::adaptive();
}

std::string AlgorithmSpec::label() const {
  switch (kind) {
    case AlgoKind::EgConstant:
      return "eg-constant";
    case AlgoKind::EgInvSqrt:
      return "eg-inv-sqrt";
    case AlgoKind::EgAdaptive:
      return "eg-adaptive";
    case AlgoKind::AdaProx:
      return "adaprox";
  }
  return "?";
}

Trace run(StochasticOracle& oracle, const AlgorithmSpec& algo, std::size_t iterations,
          const Vec& init, const StepObserver& observer) {
  if (iterations < 1) throw InvalidConfigError("run needs iterations >= 1");
  const DomainSpec& domain = oracle.problem().domain();
  if (!domain.contains(init, 1e-9))
    throw InvalidPointError("run: initial point outside " + domain.describe());

  const bool euclidean_algo = algo.kind != AlgoKind::AdaProx;
  if (euclidean_algo && domain.kind() != DomainKind::Box &&
      domain.kind() != DomainKind::Unconstrained)
    throw InvalidConfigError("euclidean extra-gradient needs a box or unconstrained domain; "
                             "use adaprox with a matching geometry instead");

  FinslerMetric metric = euclidean_algo ? FinslerMetric::euclidean(domain.dim())
                                        : (algo.metric == MetricKind::InverseBox
                                               ? FinslerMetric::inverse_box(domain.dim())
                                               : FinslerMetric::euclidean(domain.dim()));
  BregmanFunction bregman = (!euclidean_algo && algo.bregman == BregmanKind::InverseBarrier)
                                ? BregmanFunction::inverse_barrier(domain.dim())
                                : BregmanFunction::half_squared_euclidean(domain.dim());
  if (!bregman.supports(domain))
    throw InvalidConfigError("run: bregman function has no prox for " + domain.describe());

  SolverState state = SolverState::start(init, algo.make_policy());

  Trace trace;
  trace.eta.reserve(iterations);
  trace.delta.reserve(iterations);
  trace.sum_delta_sq.reserve(iterations);

  // iterate snapshots at 1..100, then log-spaced (5% growth), plus the end
  std::size_t next_checkpoint = 1;

  for (std::size_t n = 1; n <= iterations; ++n) {
    StepResult r = adaprox_step(state, oracle, metric, bregman, domain);

    trace.eta.push_back(r.eta);
    trace.delta.push_back(r.delta);
    trace.sum_delta_sq.push_back(state.policy.sum_delta_sq());
    trace.completed = n;

    Vec average = state.ergodic_average();

    if (observer) {
      StepView view{n,       state.x, state.x_lead,         average,
                    r.eta,   r.delta, state.policy.sum_delta_sq(), r.diverged};
      observer(view);
    }

    if (n >= next_checkpoint || n == iterations || r.diverged) {
      trace.checkpoints.push_back({n, state.x, state.x_lead, average});
      if (n >= next_checkpoint)
        next_checkpoint =
            (n < 100) ? n + 1 : std::max(n + 1, std::size_t(std::ceil(double(n) * 1.05)));
    }

    if (r.diverged) {
      trace.diverged = true;
      break;
    }
  }

  trace.final_x = state.x;
  trace.final_lead = state.x_lead;
  trace.final_average = state.ergodic_average();
  return trace;
}

}  // namespace adaprox
