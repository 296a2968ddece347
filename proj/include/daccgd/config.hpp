#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daccgd/graph_sequence.hpp"
#include "daccgd/objectives.hpp"

namespace daccgd {

// Raised with an explanatory message on any config problem (missing file,
// bad syntax, unknown key, invariant violation). The CLI maps it to exit 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { Run, Verify, Sweep };
enum class ProblemKind { SyntheticQuadratic, Logistic, LeastSquares };
enum class AlgorithmKind { Daccgd, InexactGd };
enum class GraphTopology { Complete, Ring, Path, Star, Geometric, PerStep };

struct ProblemConfig {
  ProblemKind kind = ProblemKind::SyntheticQuadratic;
  // synthetic-quadratic
  int agents = 20;
  int dim = 10;
  double kappa_g = 100.0;
  double spread = 1.0;
  bool shared_rotation = true;
  double offset_scale = 1.0;
  // dataset problems
  std::string dataset;
  double theta = 0.0;  // logistic l2 weight
  double ridge = 0.0;  // least-squares l2 weight
  int dim_override = 0;
  PartitionScheme partition = PartitionScheme::Contiguous;
};

struct GraphConfig {
  GraphTopology topology = GraphTopology::Geometric;
  int tau = 1;              // >1 slices the base graph into a tau-connected sequence
  double radius = 0.5;      // geometric
  double extra_edge_prob = 0.1;  // per-step
  int contraction_horizon = 200;
};

struct AlgorithmConfig {
  AlgorithmKind kind = AlgorithmKind::Daccgd;
  double epsilon = 1e-6;
  std::optional<int> t_override;   // fixed consensus rounds (e.g. T = 5)
  std::optional<double> gamma;     // inexact-gd step, default 1/L_l
  long max_outer = 200000;
  bool early_exit = true;
};

struct VerifyConfig {
  int test_points = 200;
  long lemma2_max_k = 1000;
};

struct SweepConfig {
  std::vector<double> kappa_values{10.0, 100.0, 1000.0, 10000.0};
};

struct ExperimentConfig {
  RunMode mode = RunMode::Run;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  bool plot = true;
  ProblemConfig problem;
  GraphConfig graph;
  AlgorithmConfig algorithm;
  VerifyConfig verify;
  SweepConfig sweep;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Builders shared by the CLI and tests.
ProblemInstance build_problem(const ProblemConfig& cfg, std::uint64_t seed);
GraphSequence build_graph_sequence(const GraphConfig& cfg, int agents, std::uint64_t seed);

}  // namespace daccgd
