#ifndef ADAPROX_EXPERIMENT_HPP
#define ADAPROX_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adaprox/config.hpp"
#include "adaprox/merit.hpp"
#include "adaprox/oracle.hpp"
#include "adaprox/solvers.hpp"

namespace adaprox {

// Merit columns of the trace CSV, in schema order.
inline constexpr std::array<const char*, 4> kMeritColumns = {"gap_avg", "gap_last", "wardrop",
                                                             "grad_norm_sq"};
enum MeritColumn { kGapAvg = 0, kGapLast = 1, kWardrop = 2, kGradNormSq = 3 };

struct MeritSample {
  std::size_t n = 0;
  std::array<double, 4> value;  // NaN where not sampled / not enabled

  MeritSample() { value.fill(std::numeric_limits<double>::quiet_NaN()); }
};

// Problem instance plus the glue the harness needs around it.
struct BuiltProblem {
  std::shared_ptr<const VIProblem> problem;
  Vec default_init;
  bool maps_to_loads = false;  // wardrop input is unit_to_loads(average)
  // covariance-game construction data (minibatch oracle is seed-dependent)
  std::size_t cov_dim = 0;
  linalg::Matrix covariance;
  std::size_t batch = 0;
  bool is_covariance = false;
};

BuiltProblem build_problem(const ProblemConfig& spec);
StochasticOracle build_oracle(const BuiltProblem& built, const NoiseConfig& noise,
                              std::uint64_t seed);

// Test domain the gap merit is evaluated over, resolved from the config.
TestDomain resolve_gap_domain(const BuiltProblem& built, const MeritConfig& merit);

struct SeedRun {
  std::uint64_t seed = 0;
  Trace trace;
  std::vector<MeritSample> merits;
  std::array<double, 4> initial_merit;
  std::array<double, 4> final_merit;
  std::array<std::optional<RateFit>, 4> fits;
  std::array<std::string, 4> fit_errors;

  SeedRun() {
    initial_merit.fill(std::numeric_limits<double>::quiet_NaN());
    final_merit.fill(std::numeric_limits<double>::quiet_NaN());
  }

  std::vector<std::pair<std::size_t, double>> merit_series(int column) const;
};

SeedRun run_seed(const ExperimentConfig& config, const BuiltProblem& built, std::uint64_t seed);

struct Aggregate {
  std::array<double, 4> final_mean;
  std::array<double, 4> final_ci_half_width;  // 95%, t-quantile with S-1 dof
  std::size_t diverged_count = 0;
  std::size_t seed_count = 0;

  Aggregate() {
    final_mean.fill(std::numeric_limits<double>::quiet_NaN());
    final_ci_half_width.fill(std::numeric_limits<double>::quiet_NaN());
  }
};

struct RunReport {
  ExperimentConfig config;
  std::vector<SeedRun> seeds;  // in config seed order
  Aggregate aggregate;
  std::array<bool, 4> enabled_columns{};
};

struct RunOptions {
  std::string out_dir = ".";
  unsigned workers = 0;  // 0 = hardware concurrency
  bool quiet = false;
  bool write_artifacts = true;
};

// Multi-seed experiment: seeds run in parallel on share-nothing workers and
// are merged in seed order. Writes one trace CSV per seed, a report JSON and
// a plot-data CSV under out_dir.
RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

struct SweepEntry {
  std::string value;  // JSON-encoded grid value
  RunReport report;
};

struct SweepReport {
  std::string parameter;
  std::vector<SweepEntry> entries;
};

RunReport run_single(const ExperimentConfig& config, const RunOptions& options);
SweepReport run_sweep(const ExperimentConfig& config, const RunOptions& options = {});

// 0.975 Student-t quantile with `dof` degrees of freedom (95% two-sided CI).
double t_quantile_975(std::size_t dof);

std::string report_to_json(const RunReport& report);
std::string sweep_to_json(const SweepReport& report);
std::string sweep_table(const SweepReport& report);

}  // namespace adaprox

#endif
