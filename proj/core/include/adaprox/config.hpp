#ifndef ADAPROX_CONFIG_HPP
#define ADAPROX_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adaprox/linalg.hpp"
#include "adaprox/solvers.hpp"

namespace adaprox {

// Experiment configuration, read from a sectioned key = value file with
// JSON-typed values. Parsing is strict: unknown sections or keys, duplicate
// keys, missing required fields and type mismatches are all rejected.

struct ProblemConfig {
  enum class Kind {
    Bilinear,
    Sign,
    ResourceAllocation,
    ResourceAllocationTransformed,
    Covariance,
  };
  Kind kind = Kind::Bilinear;
  std::size_t dim = 1;
  // bilinear
  std::string matrix = "gaussian";  // gaussian | identity
  std::uint64_t matrix_seed = 1;
  double matrix_scale = 1.0;
  Vec theta_star, phi_star;  // empty = zeros
  double box_radius = 1.0;
  // sign field
  double g_scale = 1.0;
  Vec x_star;  // empty = zeros
  // resource allocation
  Vec capacities;
  double inflow = 0.0;
  double lambda = 0.0;
  bool jacobian_scaling = false;
  // covariance game
  Vec covariance_diag;  // empty = identity
  std::size_t batch = 32;

  std::string kind_name() const;
};

struct NoiseConfig {
  enum class Kind { None, Gaussian, Minibatch };
  Kind kind = Kind::None;
  double sigma = 0.0;

  std::string kind_name() const;
};

struct MeritConfig {
  bool gap = false;
  bool wardrop = false;
  bool grad_norm_sq = false;
  std::size_t cadence = 1;
  std::string gap_domain = "auto";  // auto | full-box | neighborhood
  std::size_t gap_samples = 4096;
  double neighborhood_fraction = 0.25;

  bool any() const { return gap || wardrop || grad_norm_sq; }
  std::vector<std::string> names() const;
};

struct RunSettings {
  std::size_t iterations = 1;
  std::vector<std::uint64_t> seeds;
  Vec init;  // empty = problem default
  MeritConfig merit;
  std::string output;
};

struct SweepSettings {
  std::string parameter;                 // dotted key, e.g. algorithm.eta
  std::vector<std::string> raw_values;   // JSON-encoded grid values
};

struct ExperimentConfig {
  ProblemConfig problem;
  AlgorithmSpec algorithm;
  NoiseConfig noise;
  RunSettings run;
  std::optional<SweepSettings> sweep;
};

// Parse and fully validate a config file; throws InvalidConfigError with a
// message naming the offending section/key.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// Cross-field validation (problem/algorithm/noise/merit compatibility);
// parse_* already calls this.
void validate_experiment(const ExperimentConfig& config);

// Canonical text form with all defaults resolved; parsing it back yields the
// same configuration (normalize is a fixpoint).
std::string normalize_config(const ExperimentConfig& config);

// Apply one sweep override (dotted parameter, JSON-encoded value) to a copy
// of the base configuration.
ExperimentConfig apply_override(const ExperimentConfig& base, const std::string& parameter,
                                const std::string& json_value);

}  // namespace adaprox

#endif
