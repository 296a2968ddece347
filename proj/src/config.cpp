#include "daccgd/config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "daccgd/libsvm.hpp"

namespace daccgd {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
  return obj[key].get<double>();
}

long get_integer(const json& obj, const char* key, long fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError(std::string("key '") + key + "' must be an integer");
  return obj[key].get<long>();
}

bool get_boolean(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) throw ConfigError(std::string("key '") + key + "' must be a boolean");
  return obj[key].get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw ConfigError(std::string("key '") + key + "' must be a string");
  return obj[key].get<std::string>();
}

ProblemConfig parse_problem(const json& obj) {
  check_keys(obj, "problem",
             {"type", "agents", "dim", "kappa_g", "spread", "shared_rotation", "offset_scale",
              "dataset", "theta", "ridge", "dim_override", "partition"});
  ProblemConfig cfg;
  std::string type = get_string(obj, "type", "synthetic-quadratic");
  if (type == "synthetic-quadratic")
    cfg.kind = ProblemKind::SyntheticQuadratic;
  else if (type == "logistic")
    cfg.kind = ProblemKind::Logistic;
  else if (type == "least-squares")
    cfg.kind = ProblemKind::LeastSquares;
  else
    throw ConfigError("problem.type must be synthetic-quadratic, logistic or least-squares");

  cfg.agents = static_cast<int>(get_integer(obj, "agents", cfg.agents));
  cfg.dim = static_cast<int>(get_integer(obj, "dim", cfg.dim));
  cfg.kappa_g = get_number(obj, "kappa_g", cfg.kappa_g);
  cfg.spread = get_number(obj, "spread", cfg.spread);
  cfg.shared_rotation = get_boolean(obj, "shared_rotation", cfg.shared_rotation);
  cfg.offset_scale = get_number(obj, "offset_scale", cfg.offset_scale);
  cfg.dataset = get_string(obj, "dataset", "");
  cfg.theta = get_number(obj, "theta", cfg.theta);
  cfg.ridge = get_number(obj, "ridge", cfg.ridge);
  cfg.dim_override = static_cast<int>(get_integer(obj, "dim_override", 0));
  std::string part = get_string(obj, "partition", "contiguous");
  if (part == "contiguous")
    cfg.partition = PartitionScheme::Contiguous;
  else if (part == "shuffled")
    cfg.partition = PartitionScheme::Shuffled;
  else
    throw ConfigError("problem.partition must be contiguous or shuffled");

  if (cfg.agents < 1) throw ConfigError("problem.agents must be >= 1");
  if (cfg.kind == ProblemKind::SyntheticQuadratic) {
    if (cfg.dim < 2) throw ConfigError("problem.dim must be >= 2");
    if (cfg.kappa_g < 1.0) throw ConfigError("problem.kappa_g must be >= 1");
    if (cfg.spread < 1.0) throw ConfigError("problem.spread must be >= 1");
  } else {
    if (cfg.dataset.empty()) throw ConfigError("problem.dataset is required for dataset problems");
    if (cfg.kind == ProblemKind::Logistic && !(cfg.theta > 0.0))
      throw ConfigError("problem.theta must be > 0 for logistic problems");
    if (cfg.ridge < 0.0) throw ConfigError("problem.ridge must be >= 0");
    if (cfg.dim_override < 0) throw ConfigError("problem.dim_override must be >= 0");
  }
  return cfg;
}

GraphConfig parse_graph(const json& obj) {
  check_keys(obj, "graph", {"topology", "tau", "radius", "extra_edge_prob", "contraction_horizon"});
  GraphConfig cfg;
  std::string topo = get_string(obj, "topology", "geometric");
  if (topo == "complete")
    cfg.topology = GraphTopology::Complete;
  else if (topo == "ring")
    cfg.topology = GraphTopology::Ring;
  else if (topo == "path")
    cfg.topology = GraphTopology::Path;
  else if (topo == "star")
    cfg.topology = GraphTopology::Star;
  else if (topo == "geometric")
    cfg.topology = GraphTopology::Geometric;
  else if (topo == "per-step")
    cfg.topology = GraphTopology::PerStep;
  else
    throw ConfigError("graph.topology must be complete, ring, path, star, geometric or per-step");

  cfg.tau = static_cast<int>(get_integer(obj, "tau", 1));
  cfg.radius = get_number(obj, "radius", cfg.radius);
  cfg.extra_edge_prob = get_number(obj, "extra_edge_prob", cfg.extra_edge_prob);
  cfg.contraction_horizon = static_cast<int>(get_integer(obj, "contraction_horizon", 200));

  if (cfg.tau < 1) throw ConfigError("graph.tau must be >= 1");
  if (cfg.topology == GraphTopology::PerStep && cfg.tau != 1)
    throw ConfigError("graph.tau is not supported for per-step sequences");
  if (!(cfg.radius > 0.0)) throw ConfigError("graph.radius must be > 0");
  if (cfg.extra_edge_prob < 0.0 || cfg.extra_edge_prob > 1.0)
    throw ConfigError("graph.extra_edge_prob must be in [0, 1]");
  if (cfg.contraction_horizon < 1) throw ConfigError("graph.contraction_horizon must be >= 1");
  return cfg;
}

AlgorithmConfig parse_algorithm(const json& obj) {
  check_keys(obj, "algorithm", {"type", "epsilon", "t_override", "gamma", "max_outer", "early_exit"});
  AlgorithmConfig cfg;
  std::string type = get_string(obj, "type", "daccgd");
  if (type == "daccgd")
    cfg.kind = AlgorithmKind::Daccgd;
  else if (type == "inexact-gd")
    cfg.kind = AlgorithmKind::InexactGd;
  else
    throw ConfigError("algorithm.type must be daccgd or inexact-gd");

  cfg.epsilon = get_number(obj, "epsilon", cfg.epsilon);
  if (obj.contains("t_override"))
    cfg.t_override = static_cast<int>(get_integer(obj, "t_override", 0));
  if (obj.contains("gamma")) cfg.gamma = get_number(obj, "gamma", 0.0);
  cfg.max_outer = get_integer(obj, "max_outer", cfg.max_outer);
  cfg.early_exit = get_boolean(obj, "early_exit", cfg.early_exit);

  if (!(cfg.epsilon > 0.0)) throw ConfigError("algorithm.epsilon must be > 0");
  if (cfg.t_override && *cfg.t_override < 1)
    throw ConfigError("algorithm.t_override must be >= 1");
  if (cfg.gamma && !(*cfg.gamma > 0.0)) throw ConfigError("algorithm.gamma must be > 0");
  if (cfg.max_outer < 0) throw ConfigError("algorithm.max_outer must be >= 0");
  return cfg;
}

VerifyConfig parse_verify(const json& obj) {
  check_keys(obj, "verify", {"test_points", "lemma2_max_k"});
  VerifyConfig cfg;
  cfg.test_points = static_cast<int>(get_integer(obj, "test_points", cfg.test_points));
  cfg.lemma2_max_k = get_integer(obj, "lemma2_max_k", cfg.lemma2_max_k);
  if (cfg.test_points < 1) throw ConfigError("verify.test_points must be >= 1");
  if (cfg.lemma2_max_k < 1) throw ConfigError("verify.lemma2_max_k must be >= 1");
  return cfg;
}

SweepConfig parse_sweep(const json& obj) {
  check_keys(obj, "sweep", {"kappa_values"});
  SweepConfig cfg;
  if (obj.contains("kappa_values")) {
    if (!obj["kappa_values"].is_array())
      throw ConfigError("sweep.kappa_values must be an array of numbers");
    cfg.kappa_values.clear();
    for (const auto& v : obj["kappa_values"]) {
      if (!v.is_number()) throw ConfigError("sweep.kappa_values must be an array of numbers");
      cfg.kappa_values.push_back(v.get<double>());
    }
  }
  if (cfg.kappa_values.empty()) throw ConfigError("sweep.kappa_values must be non-empty");
  for (double k : cfg.kappa_values)
    if (k < 1.0) throw ConfigError("sweep.kappa_values entries must be >= 1");
  return cfg;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  check_keys(root, "config root",
             {"mode", "seed", "output_dir", "plot", "problem", "graph", "algorithm", "verify",
              "sweep"});

  ExperimentConfig cfg;
  std::string mode = get_string(root, "mode", "run");
  if (mode == "run")
    cfg.mode = RunMode::Run;
  else if (mode == "verify")
    cfg.mode = RunMode::Verify;
  else if (mode == "sweep")
    cfg.mode = RunMode::Sweep;
  else
    throw ConfigError("mode must be run, verify or sweep");

  long seed = get_integer(root, "seed", 1);
  if (seed < 0) throw ConfigError("seed must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.output_dir = get_string(root, "output_dir", cfg.output_dir);
  cfg.plot = get_boolean(root, "plot", cfg.plot);
  if (root.contains("problem")) cfg.problem = parse_problem(root["problem"]);
  if (cfg.problem.kind != ProblemKind::SyntheticQuadratic &&
      !std::filesystem::exists(cfg.problem.dataset))
    throw ConfigError("dataset file not found: " + cfg.problem.dataset);
  if (root.contains("graph")) cfg.graph = parse_graph(root["graph"]);
  if (root.contains("algorithm")) cfg.algorithm = parse_algorithm(root["algorithm"]);
  if (root.contains("verify")) cfg.verify = parse_verify(root["verify"]);
  if (root.contains("sweep")) cfg.sweep = parse_sweep(root["sweep"]);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ProblemInstance build_problem(const ProblemConfig& cfg, std::uint64_t seed) {
  switch (cfg.kind) {
    case ProblemKind::SyntheticQuadratic: {
      SyntheticQuadraticParams p;
      p.agents = cfg.agents;
      p.dim = cfg.dim;
      p.kappa_g = cfg.kappa_g;
      p.spread = cfg.spread;
      p.shared_rotation = cfg.shared_rotation;
      p.offset_scale = cfg.offset_scale;
      p.seed = seed;
      return make_synthetic_quadratic(p);
    }
    case ProblemKind::Logistic: {
      Dataset data = load_libsvm(cfg.dataset, cfg.dim_override);
      return make_logistic_problem(data, cfg.agents, cfg.theta, cfg.partition, seed);
    }
    case ProblemKind::LeastSquares: {
      Dataset data = load_libsvm(cfg.dataset, cfg.dim_override);
      return make_least_squares_problem(data, cfg.agents, cfg.ridge, cfg.partition, seed);
    }
  }
  throw ConfigError("unreachable problem kind");
}

GraphSequence build_graph_sequence(const GraphConfig& cfg, int agents, std::uint64_t seed) {
  if (cfg.topology == GraphTopology::PerStep)
    return GraphSequence::per_step_connected(agents, cfg.extra_edge_prob, seed);

  EdgeSet base = [&] {
    switch (cfg.topology) {
      case GraphTopology::Complete: return complete_graph(agents);
      case GraphTopology::Ring: return ring_graph(agents);
      case GraphTopology::Path: return path_graph(agents);
      case GraphTopology::Star: return star_graph(agents);
      case GraphTopology::Geometric:
        return GraphSequence::random_geometric(agents, cfg.radius, seed).edge_set_at(0);
      default: throw ConfigError("unreachable graph topology");
    }
  }();
  if (cfg.tau == 1) return GraphSequence::static_graph(base);
  return GraphSequence::tau_connected(base, cfg.tau);
}

}  // namespace daccgd
