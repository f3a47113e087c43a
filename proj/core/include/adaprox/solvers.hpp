#ifndef ADAPROX_SOLVERS_HPP
#define ADAPROX_SOLVERS_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "adaprox/bregman.hpp"
#include "adaprox/finsler.hpp"
#include "adaprox/oracle.hpp"

namespace adaprox {

// Step-size schedule. The adaptive policy keeps
//   eta_{n+1} = 1 / sqrt(1 + sum_{k<=n} delta_k^2),   eta_1 = 1,
// where delta_n is the dual-norm difference of successive gradient signals;
// eta is then non-increasing by construction.
class StepPolicy {
 public:
  enum class Kind { Constant, InverseSqrt, Adaptive };

  static StepPolicy constant(double eta);
  static StepPolicy inverse_sqrt(double c);
  static StepPolicy adaptive();

  Kind kind() const { return kind_; }
  double sum_delta_sq() const { return sum_delta_sq_; }

  // eta_n for the (1-based) iteration about to run
  double step_for(std::size_t n) const;
  // feed delta_n after the iteration; fixes eta_{n+1} for the adaptive kind
  void absorb(double delta);

 private:
  StepPolicy(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  Kind kind_;
  double parameter_;
  double sum_delta_sq_ = 0.0;
  double current_ = 1.0;
};

struct SolverState {
  Vec x;       // X_n
  Vec x_lead;  // X_{n+1/2}
  std::size_t n = 1;
  Vec avg_num;  // sum_k eta_k X_{k+1/2}
  double avg_den = 0.0;
  StepPolicy policy;

  static SolverState start(Vec x0, StepPolicy policy);
  Vec ergodic_average() const;
};

struct StepResult {
  double eta = 0.0;
  double delta = 0.0;
  bool diverged = false;
};

// One extra-gradient iteration with Bregman prox-steps:
//   X_{n+1/2} = prox_{X_n}(-eta_n g_n),  X_{n+1} = prox_{X_n}(-eta_n g_{n+1/2}),
//   delta_n   = |g_{n+1/2} - g_n|_{X_{n+1/2},*}.
// Ergodic averaging accumulates eta_n X_{n+1/2}. A non-finite or exploding
// iterate reports diverged without advancing the state.
StepResult adaprox_step(SolverState& state, StochasticOracle& oracle,
                        const FinslerMetric& metric, const BregmanFunction& bregman,
                        const DomainSpec& domain);

// Euclidean specialization: projections instead of prox-steps and the global
// L2 norm for delta. Requires a closed domain (box or unconstrained).
StepResult eg_step(SolverState& state, StochasticOracle& oracle, const DomainSpec& domain);

enum class AlgoKind { EgConstant, EgInvSqrt, EgAdaptive, AdaProx };

struct AlgorithmSpec {
  AlgoKind kind = AlgoKind::AdaProx;
  double eta = 0.0;  // EgConstant
  double c = 0.0;    // EgInvSqrt
  MetricKind metric = MetricKind::Euclidean;                // AdaProx
  BregmanKind bregman = BregmanKind::HalfSquaredEuclidean;  // AdaProx

  StepPolicy make_policy() const;
  std::string label() const;
};

struct IterateCheckpoint {
  std::size_t n;
  Vec x;
  Vec x_lead;
  Vec average;
};

// Per-run record. Scalar series are complete over the completed iterations;
// iterate snapshots are kept at 1..100 and log-spaced checkpoints beyond.
struct Trace {
  std::vector<double> eta;
  std::vector<double> delta;
  std::vector<double> sum_delta_sq;
  std::vector<IterateCheckpoint> checkpoints;
  bool diverged = false;
  std::size_t completed = 0;
  Vec final_x;
  Vec final_lead;
  Vec final_average;

  double eta_at(std::size_t n) const { return eta.at(n - 1); }
};

struct StepView {
  std::size_t n;
  const Vec& x;        // X_{n+1} (last good X on divergence)
  const Vec& x_lead;   // X_{n+1/2}
  const Vec& average;  // ergodic average through n
  double eta;
  double delta;
  double sum_delta_sq;
  bool diverged;
};

using StepObserver = std::function<void(const StepView&)>;

// Runs `iterations` steps of the configured algorithm from `init`, recording
// the full trace. Divergence truncates the run and is recorded, not thrown.
Trace run(StochasticOracle& oracle, const AlgorithmSpec& algo, std::size_t iterations,
          const Vec& init, const StepObserver& observer = {});

}  // namespace adaprox

#endif
