#include "adaprox/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "adaprox/errors.hpp"
#include "adaprox/trace_io.hpp"

namespace adaprox {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<std::pair<std::size_t, double>> SeedRun::merit_series(int column) const {
  std::vector<std::pair<std::size_t, double>> out;
  for (const MeritSample& row : merits)
    if (std::isfinite(row.value[column])) out.emplace_back(row.n, row.value[column]);
  return out;
}

BuiltProblem build_problem(const ProblemConfig& spec) {
  BuiltProblem built;
  switch (spec.kind) {
    case ProblemConfig::Kind::Bilinear: {
      linalg::Matrix m;
      if (spec.matrix == "identity") {
        m = linalg::Matrix(spec.dim, spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i) m(i, i) = 1.0;
      } else {
        m = gaussian_matrix(spec.dim, spec.dim, spec.matrix_seed, spec.matrix_scale);
      }
      built.problem = std::make_shared<VIProblem>(
          make_bilinear(m, spec.theta_star, spec.phi_star, spec.box_radius));
      built.default_init = Vec(2 * spec.dim, 0.5 * spec.box_radius);
      break;
    }
    case ProblemConfig::Kind::Sign: {
      built.problem = std::make_shared<VIProblem>(
          make_sign_field(spec.dim, spec.g_scale, spec.x_star, spec.box_radius));
      built.default_init = Vec(spec.dim, 0.5 * spec.box_radius);
      break;
    }
    case ProblemConfig::Kind::ResourceAllocation: {
      built.problem = std::make_shared<VIProblem>(
          make_resource_allocation(spec.capacities, spec.inflow, spec.lambda));
      built.default_init = built.problem->domain().center();
      break;
    }
    case ProblemConfig::Kind::ResourceAllocationTransformed: {
      VIProblem loads = make_resource_allocation(spec.capacities, spec.inflow, spec.lambda);
      built.problem = std::make_shared<VIProblem>(
          to_transformed_coordinates(loads, spec.jacobian_scaling));
      built.maps_to_loads = true;

      // balanced utilization, tilted pairwise so the start is not already
      // the equilibrium on symmetric instances
      const Vec& c = spec.capacities;
      double total = 0.0;
      for (double v : c) total += v;
      double t = 1.0 - spec.inflow / total;
      Vec init(c.size(), t);
      for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
        double a = 0.4 * std::min(t, 1.0 - t) * std::min(c[i], c[i + 1]);
        init[i] += a / c[i];
        init[i + 1] -= a / c[i + 1];
      }
      built.default_init = init;
      break;
    }
    case ProblemConfig::Kind::Covariance: {
      linalg::Matrix sigma(spec.dim, spec.dim);
      for (std::size_t i = 0; i < spec.dim; ++i) sigma(i, i) = spec.covariance_diag[i];
      built.problem = std::make_shared<VIProblem>(make_covariance_problem(spec.dim, sigma));
      built.is_covariance = true;
      built.cov_dim = spec.dim;
      built.covariance = sigma;
      built.batch = spec.batch;

      Vec init(2 * spec.dim * spec.dim, 0.0);
      for (std::size_t i = 0; i < spec.dim; ++i) init[i * spec.dim + i] = 1.0;  // V = I, W = 0
      built.default_init = init;
      break;
    }
  }
  return built;
}

StochasticOracle build_oracle(const BuiltProblem& built, const NoiseConfig& noise,
                              std::uint64_t seed) {
  switch (noise.kind) {
    case NoiseConfig::Kind::None:
      return StochasticOracle(built.problem, NoiseSpec::none(), seed);
    case NoiseConfig::Kind::Gaussian:
      return StochasticOracle(
          built.problem, NoiseSpec::gaussian(built.problem->domain().dim(), noise.sigma), seed);
    case NoiseConfig::Kind::Minibatch:
      if (!built.is_covariance)
        throw InvalidConfigError("minibatch noise needs the covariance game");
      return make_covariance_game(built.cov_dim, built.covariance, built.batch, seed);
  }
  return StochasticOracle(built.problem, NoiseSpec::none(), seed);
}

TestDomain resolve_gap_domain(const BuiltProblem& built, const MeritConfig& merit) {
  const VIProblem& p = *built.problem;
  const DomainSpec& domain = p.domain();
  const bool has_solution = p.known_solution().has_value();
  const bool neighborhood =
      merit.gap_domain == "neighborhood" || (merit.gap_domain == "auto" && has_solution);

  if (neighborhood) {
    if (!has_solution)
      throw InvalidConfigError("gap neighborhood needs a problem with a known solution");
    double half_width = 0.5;
    if (domain.kind() == DomainKind::Box) {
      half_width = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < domain.dim(); ++i)
        half_width = std::min(half_width, 0.5 * (domain.upper()[i] - domain.lower()[i]));
    } else if (domain.kind() == DomainKind::Unconstrained) {
      throw InvalidConfigError("gap on an unbounded domain needs an explicit test set");
    }
    return TestDomain::neighborhood(*p.known_solution(),
                                    merit.neighborhood_fraction * half_width,
                                    merit.gap_samples);
  }
  if (!domain.bounded())
    throw InvalidConfigError("gap over the full domain needs a bounded domain");
  return TestDomain::full_box(merit.gap_samples);
}

SeedRun run_seed(const ExperimentConfig& config, const BuiltProblem& built, std::uint64_t seed) {
  SeedRun out;
  out.seed = seed;

  StochasticOracle oracle = build_oracle(built, config.noise, seed);
  const Vec init = config.run.init.empty() ? built.default_init : config.run.init;
  const MeritConfig& mc = config.run.merit;
  const VIProblem& det = *built.problem;
  const std::size_t iterations = config.run.iterations;

  std::optional<TestDomain> gap_domain;
  if (mc.gap) gap_domain = resolve_gap_domain(built, mc);

  StepObserver observer;
  if (mc.any()) {
    observer = [&](const StepView& v) {
      const bool due =
          v.n == 1 || v.n % mc.cadence == 0 || v.n == iterations || v.diverged;
      if (!due) return;
      MeritSample row;
      row.n = v.n;
      if (mc.gap) {
        row.value[kGapAvg] = restricted_gap(det, *gap_domain, v.average);
        row.value[kGapLast] = restricted_gap(det, *gap_domain, v.x);
      }
      if (mc.wardrop) {
        Vec loads = built.maps_to_loads
                        ? unit_to_loads(det.domain().capacities(), v.average)
                        : v.average;
        row.value[kWardrop] = wardrop_residual(det, loads);
      }
      if (mc.grad_norm_sq) row.value[kGradNormSq] = grad_norm_sq(det, v.average);
      out.merits.push_back(row);
    };
  }

  out.trace = run(oracle, config.algorithm, iterations, init, observer);

  if (!out.merits.empty()) {
    out.initial_merit = out.merits.front().value;
    out.final_merit = out.merits.back().value;
    for (int col = 0; col < 4; ++col) {
      auto series = out.merit_series(col);
      if (series.empty()) continue;
      try {
        out.fits[col] = fit_rate(series);
      } catch (const EstimationError& e) {
        out.fit_errors[col] = e.what();
      }
    }
  }
  return out;
}

double t_quantile_975(std::size_t dof) {
  if (dof == 0) return 0.0;
  boost::math::students_t dist{double(dof)};
  return boost::math::quantile(dist, 0.975);
}

namespace {

Aggregate aggregate_runs(const std::vector<SeedRun>& seeds) {
  Aggregate agg;
  agg.seed_count = seeds.size();
  for (const SeedRun& s : seeds)
    if (s.trace.diverged) agg.diverged_count += 1;

  for (int col = 0; col < 4; ++col) {
    std::vector<double> finals;
    for (const SeedRun& s : seeds)
      if (std::isfinite(s.final_merit[col])) finals.push_back(s.final_merit[col]);
    if (finals.empty()) continue;
    double mean = 0.0;
    for (double v : finals) mean += v;
    mean /= double(finals.size());
    agg.final_mean[col] = mean;
    if (finals.size() < 2) {
      agg.final_ci_half_width[col] = 0.0;
      continue;
    }
    auto [lo, hi] = std::minmax_element(finals.begin(), finals.end());
    if (*lo == *hi) {  // constant series: exactly zero width
      agg.final_ci_half_width[col] = 0.0;
      continue;
    }
    double ss = 0.0;
    for (double v : finals) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / double(finals.size() - 1));
    agg.final_ci_half_width[col] =
        t_quantile_975(finals.size() - 1) * sd / std::sqrt(double(finals.size()));
  }
  return agg;
}

std::array<bool, 4> enabled_columns_of(const MeritConfig& mc) {
  return {mc.gap, mc.gap, mc.wardrop, mc.grad_norm_sq};
}

RunReport run_experiment_impl(const ExperimentConfig& config, const RunOptions& options) {
  validate_experiment(config);
  BuiltProblem built = build_problem(config.problem);

  const std::vector<std::uint64_t>& seeds = config.run.seeds;
  std::vector<SeedRun> results(seeds.size());

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, unsigned(seeds.size())));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);
  auto body = [&](unsigned slot) {
    try {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= seeds.size()) return;
        results[i] = run_seed(config, built, seeds[i]);
      }
    } catch (...) {
      failures[slot] = std::current_exception();
    }
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);

  RunReport report;
  report.config = config;
  report.seeds = std::move(results);
  report.aggregate = aggregate_runs(report.seeds);
  report.enabled_columns = enabled_columns_of(config.run.merit);

  if (options.write_artifacts) {
    fs::create_directories(options.out_dir);
    const std::string base = (fs::path(options.out_dir) / config.run.output).string();
    for (const SeedRun& s : report.seeds)
      write_trace_csv_file(base + "_seed" + std::to_string(s.seed) + ".csv", s.trace, s.merits,
                           report.enabled_columns);
    std::ofstream rj(base + "_report.json");
    if (!rj) throw std::runtime_error("cannot write " + base + "_report.json");
    rj << report_to_json(report) << "\n";
    std::ofstream pc(base + "_plot.csv");
    if (!pc) throw std::runtime_error("cannot write " + base + "_plot.csv");
    write_plot_csv(pc, report.seeds, report.enabled_columns);
  }

  if (!options.quiet) {
    std::cout << config.run.output << ": " << seeds.size() << " seed(s), "
              << report.aggregate.diverged_count << " diverged";
    for (int col = 0; col < 4; ++col) {
      if (!report.enabled_columns[col] || !std::isfinite(report.aggregate.final_mean[col]))
        continue;
      std::cout << ", final " << kMeritColumns[col] << " = "
                << report.aggregate.final_mean[col];
      if (seeds.size() > 1)
        std::cout << " +- " << report.aggregate.final_ci_half_width[col];
    }
    std::cout << "\n";
  }
  return report;
}

}  // namespace

RunReport run_single(const ExperimentConfig& config, const RunOptions& options) {
  return run_experiment_impl(config, options);
}

RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (config.sweep)
    throw InvalidConfigError("config has a [sweep] section; use the sweep entry point");
  return run_experiment_impl(config, options);
}

SweepReport run_sweep(const ExperimentConfig& config, const RunOptions& options) {
  if (!config.sweep) throw InvalidConfigError("sweep needs a [sweep] section");
  SweepReport sweep;
  sweep.parameter = config.sweep->parameter;

  for (std::size_t i = 0; i < config.sweep->raw_values.size(); ++i) {
    const std::string& raw = config.sweep->raw_values[i];
    ExperimentConfig entry_cfg = apply_override(config, sweep.parameter, raw);
    entry_cfg.run.output = config.run.output + "_g" + std::to_string(i);
    SweepEntry entry;
    entry.value = raw;
    entry.report = run_experiment_impl(entry_cfg, options);
    sweep.entries.push_back(std::move(entry));
  }

  if (options.write_artifacts) {
    fs::create_directories(options.out_dir);
    const std::string path =
        (fs::path(options.out_dir) / (config.run.output + "_sweep.json")).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << sweep_to_json(sweep) << "\n";
  }
  if (!options.quiet) std::cout << sweep_table(sweep);
  return sweep;
}

namespace {

json fit_to_json(const RateFit& fit) {
  return json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r_squared", fit.r_squared},
              {"window", {fit.window_first, fit.window_last}},
              {"excluded", fit.excluded}};
}

json merit_map(const std::array<double, 4>& values, const std::array<bool, 4>& enabled) {
  json out = json::object();
  for (int col = 0; col < 4; ++col)
    if (enabled[col] && std::isfinite(values[col])) out[kMeritColumns[col]] = values[col];
  return out;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  json j;
  j["output"] = report.config.run.output;
  j["problem"] = report.config.problem.kind_name();
  j["algorithm"] = report.config.algorithm.label();
  j["iterations"] = report.config.run.iterations;
  j["noise"] = report.config.noise.kind_name();
  j["config"] = normalize_config(report.config);
  j["seed_count"] = report.aggregate.seed_count;
  j["diverged_count"] = report.aggregate.diverged_count;

  json seeds = json::array();
  for (const SeedRun& s : report.seeds) {
    json e;
    e["seed"] = s.seed;
    e["completed"] = s.trace.completed;
    e["diverged"] = s.trace.diverged;
    e["initial"] = merit_map(s.initial_merit, report.enabled_columns);
    e["final"] = merit_map(s.final_merit, report.enabled_columns);
    json fits = json::object();
    for (int col = 0; col < 4; ++col)
      if (report.enabled_columns[col] && s.fits[col]) fits[kMeritColumns[col]] = fit_to_json(*s.fits[col]);
    e["fits"] = fits;
    json errs = json::object();
    for (int col = 0; col < 4; ++col)
      if (!s.fit_errors[col].empty()) errs[kMeritColumns[col]] = s.fit_errors[col];
    if (!errs.empty()) e["fit_errors"] = errs;
    seeds.push_back(std::move(e));
  }
  j["seeds"] = std::move(seeds);

  j["aggregate"] = {
      {"final_mean", merit_map(report.aggregate.final_mean, report.enabled_columns)},
      {"final_ci_half_width",
       merit_map(report.aggregate.final_ci_half_width, report.enabled_columns)}};
  return j.dump(2);
}

std::string sweep_to_json(const SweepReport& report) {
  json j;
  j["parameter"] = report.parameter;
  json entries = json::array();
  for (const SweepEntry& e : report.entries) {
    json je;
    je["value"] = json::parse(e.value, nullptr, false).is_discarded()
                      ? json(e.value)
                      : json::parse(e.value);
    je["output"] = e.report.config.run.output;
    je["diverged_count"] = e.report.aggregate.diverged_count;
    je["final_mean"] = merit_map(e.report.aggregate.final_mean, e.report.enabled_columns);
    je["final_ci_half_width"] =
        merit_map(e.report.aggregate.final_ci_half_width, e.report.enabled_columns);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

std::string sweep_table(const SweepReport& report) {
  std::ostringstream os;
  os << "sweep over " << report.parameter << ":\n";
  for (const SweepEntry& e : report.entries) {
    os << "  " << report.parameter << " = " << e.value << ": diverged "
       << e.report.aggregate.diverged_count << "/" << e.report.aggregate.seed_count;
    for (int col = 0; col < 4; ++col) {
      if (!e.report.enabled_columns[col] ||
          !std::isfinite(e.report.aggregate.final_mean[col]))
        continue;
      os << ", " << kMeritColumns[col] << " = " << e.report.aggregate.final_mean[col];
      if (e.report.aggregate.seed_count > 1)
        os << " +- " << e.report.aggregate.final_ci_half_width[col];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace adaprox
