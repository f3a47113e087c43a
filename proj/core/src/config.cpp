#include "adaprox/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "adaprox/errors.hpp"

namespace adaprox {

using nlohmann::json;

std::string ProblemConfig::kind_name() const {
  switch (kind) {
    case Kind::Bilinear:
      return "bilinear";
    case Kind::Sign:
      return "sign";
    case Kind::ResourceAllocation:
      return "resource-allocation";
    case Kind::ResourceAllocationTransformed:
      return "resource-allocation-transformed";
    case Kind::Covariance:
      return "covariance";
  }
  return "?";
}

std::string NoiseConfig::kind_name() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::Gaussian:
      return "gaussian";
    case Kind::Minibatch:
      return "minibatch";
  }
  return "?";
}

std::vector<std::string> MeritConfig::names() const {
  std::vector<std::string> out;
  if (gap) out.push_back("gap");
  if (wardrop) out.push_back("wardrop");
  if (grad_norm_sq) out.push_back("grad_norm_sq");
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

json parse_value(const std::string& raw) {
  json v = json::parse(raw, nullptr, false);
  if (v.is_discarded()) return json(raw);  // bare word = string
  return v;
}

// one section's keys with strict consumption tracking
class KeyBag {
 public:
  KeyBag(std::string section, std::map<std::string, json> kv)
      : section_(std::move(section)), kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  const json* take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  json require(const std::string& key) {
    const json* v = take(key);
    if (!v)
      throw InvalidConfigError("[" + section_ + "] missing required key '" + key + "'");
    return *v;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key, "a string");
    return v->get<std::string>();
  }

  std::string require_string(const std::string& key) {
    json v = require(key);
    if (!v.is_string()) fail(key, "a string");
    return v.get<std::string>();
  }

  double get_number(const std::string& key, double fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(key, "a number");
    return v->get<double>();
  }

  double require_number(const std::string& key) {
    json v = require(key);
    if (!v.is_number()) fail(key, "a number");
    return v.get<double>();
  }

  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number_integer() || v->get<double>() < 0) fail(key, "a non-negative integer");
    return v->get<std::uint64_t>();
  }

  std::uint64_t require_uint(const std::string& key) {
    json v = require(key);
    if (!v.is_number_integer() || v.get<double>() < 0) fail(key, "a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool get_bool(const std::string& key, bool fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key, "true or false");
    return v->get<bool>();
  }

  Vec get_vec(const std::string& key, Vec fallback = {}) {
    const json* v = take(key);
    if (!v) return fallback;
    return to_vec(key, *v);
  }

  Vec require_vec(const std::string& key) { return to_vec(key, require(key)); }

  std::vector<std::uint64_t> require_uints(const std::string& key) {
    json v = require(key);
    if (!v.is_array()) fail(key, "an array of integers");
    std::vector<std::uint64_t> out;
    for (const json& e : v) {
      if (!e.is_number_integer() || e.get<double>() < 0) fail(key, "an array of integers");
      out.push_back(e.get<std::uint64_t>());
    }
    return out;
  }

  std::vector<std::string> get_strings(const std::string& key) {
    const json* v = take(key);
    if (!v) return {};
    if (!v->is_array()) fail(key, "an array of strings");
    std::vector<std::string> out;
    for (const json& e : *v) {
      if (!e.is_string()) fail(key, "an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  std::vector<std::string> raw_array(const std::string& key) {
    json v = require(key);
    if (!v.is_array()) fail(key, "an array");
    std::vector<std::string> out;
    for (const json& e : v) out.push_back(e.dump());
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : kv_)
      if (!used_.count(k))
        throw InvalidConfigError("[" + section_ + "] unknown key '" + k + "'");
  }

 private:
  Vec to_vec(const std::string& key, const json& v) {
    if (!v.is_array()) fail(key, "an array of numbers");
    Vec out;
    for (const json& e : v) {
      if (!e.is_number()) fail(key, "an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& expected) {
    throw InvalidConfigError("[" + section_ + "] key '" + key + "' must be " + expected);
  }

  std::string section_;
  std::map<std::string, json> kv_;
  std::set<std::string> used_;
};

std::map<std::string, std::map<std::string, json>> read_sections(const std::string& text) {
  static const std::set<std::string> known = {"problem", "algorithm", "noise", "run", "sweep"};
  std::map<std::string, std::map<std::string, json>> sections;
  std::istringstream in(text);
  std::string line, current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw InvalidConfigError("line " + std::to_string(lineno) + ": malformed section header");
      current = trim(t.substr(1, t.size() - 2));
      if (!known.count(current))
        throw InvalidConfigError("unknown section [" + current + "]");
      if (sections.count(current))
        throw InvalidConfigError("duplicate section [" + current + "]");
      sections[current] = {};
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (current.empty())
      throw InvalidConfigError("line " + std::to_string(lineno) + ": key outside any section");
    std::string key = trim(t.substr(0, eq));
    std::string raw = trim(t.substr(eq + 1));
    if (key.empty() || raw.empty())
      throw InvalidConfigError("line " + std::to_string(lineno) + ": empty key or value");
    if (sections[current].count(key))
      throw InvalidConfigError("[" + current + "] duplicate key '" + key + "'");
    sections[current][key] = parse_value(raw);
  }
  return sections;
}

ProblemConfig parse_problem(KeyBag& bag) {
  ProblemConfig p;
  std::string kind = bag.require_string("kind");
  if (kind == "bilinear")
    p.kind = ProblemConfig::Kind::Bilinear;
  else if (kind == "sign")
    p.kind = ProblemConfig::Kind::Sign;
  else if (kind == "resource-allocation")
    p.kind = ProblemConfig::Kind::ResourceAllocation;
  else if (kind == "resource-allocation-transformed")
    p.kind = ProblemConfig::Kind::ResourceAllocationTransformed;
  else if (kind == "covariance")
    p.kind = ProblemConfig::Kind::Covariance;
  else
    throw InvalidConfigError(
        "[problem] unknown kind '" + kind +
        "' (valid: bilinear, sign, resource-allocation, resource-allocation-transformed, "
        "covariance)");

  switch (p.kind) {
    case ProblemConfig::Kind::Bilinear: {
      p.dim = std::size_t(bag.require_uint("dim"));
      p.box_radius = bag.require_number("box_radius");
      p.matrix = bag.get_string("matrix", "gaussian");
      if (p.matrix != "gaussian" && p.matrix != "identity")
        throw InvalidConfigError("[problem] matrix must be gaussian or identity");
      if (p.matrix == "gaussian") {
        p.matrix_seed = bag.get_uint("matrix_seed", 1);
        p.matrix_scale = bag.get_number("matrix_scale", 1.0);
      }
      p.theta_star = bag.get_vec("theta_star", Vec(p.dim, 0.0));
      p.phi_star = bag.get_vec("phi_star", Vec(p.dim, 0.0));
      if (p.theta_star.size() != p.dim || p.phi_star.size() != p.dim)
        throw InvalidConfigError("[problem] theta_star/phi_star must have length dim");
      break;
    }
    case ProblemConfig::Kind::Sign: {
      p.dim = std::size_t(bag.require_uint("dim"));
      p.g_scale = bag.require_number("g_scale");
      p.box_radius = bag.require_number("box_radius");
      p.x_star = bag.get_vec("x_star", Vec(p.dim, 0.0));
      if (p.x_star.size() != p.dim)
        throw InvalidConfigError("[problem] x_star must have length dim");
      break;
    }
    case ProblemConfig::Kind::ResourceAllocation:
    case ProblemConfig::Kind::ResourceAllocationTransformed: {
      p.capacities = bag.require_vec("capacities");
      p.inflow = bag.require_number("inflow");
      p.lambda = bag.get_number("lambda", 0.0);
      p.dim = p.capacities.size();
      if (p.kind == ProblemConfig::Kind::ResourceAllocationTransformed)
        p.jacobian_scaling = bag.get_bool("jacobian_scaling", false);
      break;
    }
    case ProblemConfig::Kind::Covariance: {
      p.dim = std::size_t(bag.require_uint("dim"));
      p.covariance_diag = bag.get_vec("covariance_diag", Vec(p.dim, 1.0));
      if (p.covariance_diag.size() != p.dim)
        throw InvalidConfigError("[problem] covariance_diag must have length dim");
      p.batch = std::size_t(bag.get_uint("batch", 32));
      break;
    }
  }
  bag.finish();
  return p;
}

AlgorithmSpec parse_algorithm(KeyBag& bag) {
  AlgorithmSpec a;
  std::string kind = bag.require_string("kind");
  if (kind == "eg-constant") {
    a.kind = AlgoKind::EgConstant;
    a.eta = bag.require_number("eta");
  } else if (kind == "eg-inv-sqrt") {
    a.kind = AlgoKind::EgInvSqrt;
    a.c = bag.require_number("c");
  } else if (kind == "eg-adaptive") {
    a.kind = AlgoKind::EgAdaptive;
  } else if (kind == "adaprox") {
    a.kind = AlgoKind::AdaProx;
    std::string metric = bag.get_string("metric", "euclidean");
    if (metric == "euclidean")
      a.metric = MetricKind::Euclidean;
    else if (metric == "inverse-box")
      a.metric = MetricKind::InverseBox;
    else
      throw InvalidConfigError("[algorithm] metric must be euclidean or inverse-box");
    std::string bregman = bag.get_string("bregman", "half-squared-euclidean");
    if (bregman == "half-squared-euclidean")
      a.bregman = BregmanKind::HalfSquaredEuclidean;
    else if (bregman == "inverse-barrier")
      a.bregman = BregmanKind::InverseBarrier;
    else
      throw InvalidConfigError(
          "[algorithm] bregman must be half-squared-euclidean or inverse-barrier");
  } else {
    throw InvalidConfigError("[algorithm] unknown kind '" + kind +
                             "' (valid: eg-constant, eg-inv-sqrt, eg-adaptive, adaprox)");
  }
  bag.finish();
  return a;
}

NoiseConfig parse_noise(KeyBag& bag) {
  NoiseConfig n;
  std::string kind = bag.get_string("kind", "none");
  if (kind == "none") {
    n.kind = NoiseConfig::Kind::None;
  } else if (kind == "gaussian") {
    n.kind = NoiseConfig::Kind::Gaussian;
    n.sigma = bag.require_number("sigma");
    if (!(n.sigma > 0.0)) throw InvalidConfigError("[noise] sigma must be > 0");
  } else if (kind == "minibatch") {
    n.kind = NoiseConfig::Kind::Minibatch;
  } else {
    throw InvalidConfigError("[noise] unknown kind '" + kind +
                             "' (valid: none, gaussian, minibatch)");
  }
  bag.finish();
  return n;
}

RunSettings parse_run(KeyBag& bag) {
  RunSettings r;
  r.iterations = std::size_t(bag.require_uint("iterations"));
  r.seeds = bag.require_uints("seeds");
  r.output = bag.require_string("output");
  r.init = bag.get_vec("init");
  for (const std::string& m : bag.get_strings("merits")) {
    if (m == "gap")
      r.merit.gap = true;
    else if (m == "wardrop")
      r.merit.wardrop = true;
    else if (m == "grad_norm_sq")
      r.merit.grad_norm_sq = true;
    else
      throw InvalidConfigError("[run] unknown merit '" + m +
                               "' (valid: gap, wardrop, grad_norm_sq)");
  }
  std::size_t default_cadence = std::max<std::size_t>(1, r.iterations / 256);
  r.merit.cadence = std::size_t(bag.get_uint("merit_cadence", default_cadence));
  r.merit.gap_domain = bag.get_string("gap_domain", "auto");
  if (r.merit.gap_domain != "auto" && r.merit.gap_domain != "full-box" &&
      r.merit.gap_domain != "neighborhood")
    throw InvalidConfigError("[run] gap_domain must be auto, full-box or neighborhood");
  r.merit.gap_samples = std::size_t(bag.get_uint("gap_samples", 4096));
  r.merit.neighborhood_fraction = bag.get_number("neighborhood_fraction", 0.25);
  bag.finish();
  return r;
}

SweepSettings parse_sweep(KeyBag& bag) {
  SweepSettings s;
  s.parameter = bag.require_string("parameter");
  s.raw_values = bag.raw_array("values");
  if (s.raw_values.empty()) throw InvalidConfigError("[sweep] values must be non-empty");
  bag.finish();
  return s;
}

std::string bare_or_quoted(const std::string& s) {
  bool bare = !s.empty();
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
          c == '/'))
      bare = false;
  if (bare) return s;
  return json(s).dump();
}

std::string dump_vec(const Vec& v) { return json(v).dump(); }

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  auto sections = read_sections(text);
  auto take_bag = [&](const std::string& name) -> std::optional<KeyBag> {
    auto it = sections.find(name);
    if (it == sections.end()) return std::nullopt;
    KeyBag bag(name, it->second);
    sections.erase(it);
    return bag;
  };

  ExperimentConfig cfg;

  auto problem_bag = take_bag("problem");
  if (!problem_bag) throw InvalidConfigError("missing [problem] section");
  cfg.problem = parse_problem(*problem_bag);

  auto algo_bag = take_bag("algorithm");
  if (!algo_bag) throw InvalidConfigError("missing [algorithm] section");
  cfg.algorithm = parse_algorithm(*algo_bag);

  if (auto noise_bag = take_bag("noise")) cfg.noise = parse_noise(*noise_bag);

  auto run_bag = take_bag("run");
  if (!run_bag) throw InvalidConfigError("missing [run] section");
  cfg.run = parse_run(*run_bag);

  if (auto sweep_bag = take_bag("sweep")) cfg.sweep = parse_sweep(*sweep_bag);

  validate_experiment(cfg);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void validate_experiment(const ExperimentConfig& config) {
  const ProblemConfig& p = config.problem;
  const AlgorithmSpec& a = config.algorithm;
  const RunSettings& r = config.run;

  if (r.iterations < 1) throw InvalidConfigError("[run] iterations must be >= 1");
  if (r.seeds.empty()) throw InvalidConfigError("[run] seeds must be non-empty");
  if (r.merit.cadence < 1) throw InvalidConfigError("[run] merit_cadence must be >= 1");
  if (r.output.empty()) throw InvalidConfigError("[run] output must be non-empty");

  if (p.dim < 1) throw InvalidConfigError("[problem] dim must be >= 1");
  if (a.kind == AlgoKind::EgConstant && !(a.eta > 0.0))
    throw InvalidConfigError("[algorithm] eta must be > 0");
  if (a.kind == AlgoKind::EgInvSqrt && !(a.c > 0.0))
    throw InvalidConfigError("[algorithm] c must be > 0");

  // problem-level sanity; full construction re-checks these
  if (p.kind == ProblemConfig::Kind::Bilinear || p.kind == ProblemConfig::Kind::Sign) {
    if (!(p.box_radius > 0.0)) throw InvalidConfigError("[problem] box_radius must be > 0");
  }
  if (p.kind == ProblemConfig::Kind::Bilinear) {
    for (std::size_t i = 0; i < p.dim; ++i)
      if (std::abs(p.theta_star[i]) >= p.box_radius || std::abs(p.phi_star[i]) >= p.box_radius)
        throw InvalidConfigError(
            "[problem] theta_star/phi_star must lie strictly inside the box");
  }
  if (p.kind == ProblemConfig::Kind::Sign) {
    if (!(p.g_scale > 0.0)) throw InvalidConfigError("[problem] g_scale must be > 0");
    for (std::size_t i = 0; i < p.dim; ++i)
      if (std::abs(p.x_star[i]) >= p.box_radius)
        throw InvalidConfigError("[problem] x_star must lie strictly inside the box");
  }
  if (p.kind == ProblemConfig::Kind::ResourceAllocation ||
      p.kind == ProblemConfig::Kind::ResourceAllocationTransformed) {
    double total = 0.0;
    for (double c : p.capacities) {
      if (!(c > 0.0)) throw InvalidConfigError("[problem] capacities must be positive");
      total += c;
    }
    if (!(p.inflow > 0.0 && p.inflow < total))
      throw InvalidConfigError("[problem] inflow must satisfy 0 < inflow < total capacity");
    if (p.lambda < 0.0) throw InvalidConfigError("[problem] lambda must be >= 0");
  }
  if (p.kind == ProblemConfig::Kind::Covariance) {
    for (double v : p.covariance_diag)
      if (!(v > 0.0)) throw InvalidConfigError("[problem] covariance_diag must be positive");
    if (p.batch < 1) throw InvalidConfigError("[problem] batch must be >= 1");
  }

  // algorithm/problem geometry compatibility
  const bool euclidean_algo = a.kind != AlgoKind::AdaProx;
  const bool barrier = a.kind == AlgoKind::AdaProx && a.bregman == BregmanKind::InverseBarrier;
  const bool inverse_box = a.kind == AlgoKind::AdaProx && a.metric == MetricKind::InverseBox;

  switch (p.kind) {
    case ProblemConfig::Kind::Bilinear:
    case ProblemConfig::Kind::Sign:
      if (barrier || inverse_box)
        throw InvalidConfigError(
            "[algorithm] inverse-box/inverse-barrier geometry needs a positive-coordinate "
            "domain; this problem lives on a symmetric box");
      break;
    case ProblemConfig::Kind::ResourceAllocation:
      throw InvalidConfigError(
          "[problem] the loads-frame resource allocation problem has no prox solver; use "
          "kind = resource-allocation-transformed");
    case ProblemConfig::Kind::ResourceAllocationTransformed:
      if (euclidean_algo || !barrier)
        throw InvalidConfigError(
            "[algorithm] the transformed resource allocation domain needs adaprox with "
            "bregman = inverse-barrier");
      break;
    case ProblemConfig::Kind::Covariance:
      if (barrier || inverse_box)
        throw InvalidConfigError(
            "[algorithm] the covariance game is unconstrained; use euclidean geometry");
      break;
  }

  // noise compatibility
  if (config.noise.kind == NoiseConfig::Kind::Minibatch &&
      p.kind != ProblemConfig::Kind::Covariance)
    throw InvalidConfigError("[noise] minibatch feedback is only defined for the covariance game");

  // merit compatibility
  if (r.merit.wardrop && p.kind != ProblemConfig::Kind::ResourceAllocation &&
      p.kind != ProblemConfig::Kind::ResourceAllocationTransformed)
    throw InvalidConfigError("[run] merit 'wardrop' needs a resource-allocation problem");
  if (r.merit.gap) {
    if (p.kind == ProblemConfig::Kind::Covariance)
      throw InvalidConfigError(
          "[run] merit 'gap' needs a bounded test domain; the covariance game is unbounded "
          "with no reference solution");
    if (r.merit.gap_domain == "neighborhood" || r.merit.gap_domain == "auto") {
      // neighborhood needs a reference point; every remaining problem kind
      // has one except lambda > 0 resource allocation
      bool has_solution = !(p.kind == ProblemConfig::Kind::ResourceAllocationTransformed &&
                            p.lambda > 0.0);
      if (!has_solution && r.merit.gap_domain == "neighborhood")
        throw InvalidConfigError(
            "[run] gap_domain = neighborhood needs a problem with a known solution");
    }
    if (!(r.merit.neighborhood_fraction > 0.0 && r.merit.neighborhood_fraction <= 1.0))
      throw InvalidConfigError("[run] neighborhood_fraction must lie in (0, 1]");
    if (r.merit.gap_samples < 1) throw InvalidConfigError("[run] gap_samples must be >= 1");
  }

  if (!r.init.empty()) {
    std::size_t expect = p.kind == ProblemConfig::Kind::Bilinear ? 2 * p.dim
                         : p.kind == ProblemConfig::Kind::Covariance ? 2 * p.dim * p.dim
                                                                     : p.dim;
    if (r.init.size() != expect)
      throw InvalidConfigError("[run] init must have length " + std::to_string(expect));
  }

  if (config.sweep) {
    // each grid point must itself validate
    for (const std::string& raw : config.sweep->raw_values) {
      ExperimentConfig probe = config;
      probe.sweep.reset();
      probe = apply_override(probe, config.sweep->parameter, raw);
    }
  }
}

std::string normalize_config(const ExperimentConfig& config) {
  const ProblemConfig& p = config.problem;
  const AlgorithmSpec& a = config.algorithm;
  const RunSettings& r = config.run;
  std::ostringstream os;

  os << "[problem]\n";
  os << "kind = " << p.kind_name() << "\n";
  switch (p.kind) {
    case ProblemConfig::Kind::Bilinear:
      os << "dim = " << p.dim << "\n";
      os << "box_radius = " << json(p.box_radius).dump() << "\n";
      os << "matrix = " << p.matrix << "\n";
      if (p.matrix == "gaussian") {
        os << "matrix_seed = " << p.matrix_seed << "\n";
        os << "matrix_scale = " << json(p.matrix_scale).dump() << "\n";
      }
      os << "theta_star = " << dump_vec(p.theta_star) << "\n";
      os << "phi_star = " << dump_vec(p.phi_star) << "\n";
      break;
    case ProblemConfig::Kind::Sign:
      os << "dim = " << p.dim << "\n";
      os << "g_scale = " << json(p.g_scale).dump() << "\n";
      os << "box_radius = " << json(p.box_radius).dump() << "\n";
      os << "x_star = " << dump_vec(p.x_star) << "\n";
      break;
    case ProblemConfig::Kind::ResourceAllocation:
    case ProblemConfig::Kind::ResourceAllocationTransformed:
      os << "capacities = " << dump_vec(p.capacities) << "\n";
      os << "inflow = " << json(p.inflow).dump() << "\n";
      os << "lambda = " << json(p.lambda).dump() << "\n";
      if (p.kind == ProblemConfig::Kind::ResourceAllocationTransformed)
        os << "jacobian_scaling = " << (p.jacobian_scaling ? "true" : "false") << "\n";
      break;
    case ProblemConfig::Kind::Covariance:
      os << "dim = " << p.dim << "\n";
      os << "covariance_diag = " << dump_vec(p.covariance_diag) << "\n";
      os << "batch = " << p.batch << "\n";
      break;
  }

  os << "\n[algorithm]\n";
  os << "kind = " << a.label() << "\n";
  if (a.kind == AlgoKind::EgConstant) os << "eta = " << json(a.eta).dump() << "\n";
  if (a.kind == AlgoKind::EgInvSqrt) os << "c = " << json(a.c).dump() << "\n";
  if (a.kind == AlgoKind::AdaProx) {
    os << "metric = " << (a.metric == MetricKind::InverseBox ? "inverse-box" : "euclidean")
       << "\n";
    os << "bregman = "
       << (a.bregman == BregmanKind::InverseBarrier ? "inverse-barrier"
                                                    : "half-squared-euclidean")
       << "\n";
  }

  os << "\n[noise]\n";
  os << "kind = " << config.noise.kind_name() << "\n";
  if (config.noise.kind == NoiseConfig::Kind::Gaussian)
    os << "sigma = " << json(config.noise.sigma).dump() << "\n";

  os << "\n[run]\n";
  os << "iterations = " << r.iterations << "\n";
  {
    json seeds = json::array();
    for (std::uint64_t s : r.seeds) seeds.push_back(s);
    os << "seeds = " << seeds.dump() << "\n";
  }
  if (!r.init.empty()) os << "init = " << dump_vec(r.init) << "\n";
  {
    json merits = json::array();
    for (const std::string& m : r.merit.names()) merits.push_back(m);
    os << "merits = " << merits.dump() << "\n";
  }
  os << "merit_cadence = " << r.merit.cadence << "\n";
  if (r.merit.gap) {
    os << "gap_domain = " << r.merit.gap_domain << "\n";
    os << "gap_samples = " << r.merit.gap_samples << "\n";
    os << "neighborhood_fraction = " << json(r.merit.neighborhood_fraction).dump() << "\n";
  }
  os << "output = " << bare_or_quoted(r.output) << "\n";

  if (config.sweep) {
    os << "\n[sweep]\n";
    os << "parameter = " << bare_or_quoted(config.sweep->parameter) << "\n";
    os << "values = [";
    for (std::size_t i = 0; i < config.sweep->raw_values.size(); ++i) {
      if (i) os << ",";
      os << config.sweep->raw_values[i];
    }
    os << "]\n";
  }
  return os.str();
}

ExperimentConfig apply_override(const ExperimentConfig& base, const std::string& parameter,
                                const std::string& json_value) {
  ExperimentConfig cfg = base;
  cfg.sweep.reset();
  json v = json::parse(json_value, nullptr, false);
  if (v.is_discarded()) v = json(json_value);

  auto need_number = [&]() {
    if (!v.is_number())
      throw InvalidConfigError("[sweep] parameter '" + parameter + "' needs numeric values");
    return v.get<double>();
  };
  auto need_string = [&]() {
    if (!v.is_string())
      throw InvalidConfigError("[sweep] parameter '" + parameter + "' needs string values");
    return v.get<std::string>();
  };

  if (parameter == "algorithm.eta") {
    cfg.algorithm.eta = need_number();
  } else if (parameter == "algorithm.c") {
    cfg.algorithm.c = need_number();
  } else if (parameter == "algorithm.kind") {
    std::string kind = need_string();
    if (kind == "eg-constant")
      cfg.algorithm.kind = AlgoKind::EgConstant;
    else if (kind == "eg-inv-sqrt")
      cfg.algorithm.kind = AlgoKind::EgInvSqrt;
    else if (kind == "eg-adaptive")
      cfg.algorithm.kind = AlgoKind::EgAdaptive;
    else if (kind == "adaprox")
      cfg.algorithm.kind = AlgoKind::AdaProx;
    else
      throw InvalidConfigError("[sweep] unknown algorithm kind '" + kind + "'");
  } else if (parameter == "run.iterations") {
    cfg.run.iterations = std::size_t(need_number());
  } else if (parameter == "noise.sigma") {
    cfg.noise.sigma = need_number();
  } else if (parameter == "problem.lambda") {
    cfg.problem.lambda = need_number();
  } else if (parameter == "problem.box_radius") {
    cfg.problem.box_radius = need_number();
  } else if (parameter == "problem.g_scale") {
    cfg.problem.g_scale = need_number();
  } else if (parameter == "problem.matrix_scale") {
    cfg.problem.matrix_scale = need_number();
  } else {
    throw InvalidConfigError(
        "[sweep] unsupported parameter '" + parameter +
        "' (supported: algorithm.eta, algorithm.c, algorithm.kind, run.iterations, "
        "noise.sigma, problem.lambda, problem.box_radius, problem.g_scale, "
        "problem.matrix_scale)");
  }

  validate_experiment(cfg);
  return cfg;
}

}  // namespace adaprox
