#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daccgd/config.hpp"
#include "daccgd/mixing.hpp"
#include "daccgd/params.hpp"
#include "daccgd/theory.hpp"
#include "daccgd/trace.hpp"

namespace daccgd {

// One fully-resolved run: problem, network, theorem parameters, trace.
struct RunArtifacts {
  RunTrace trace;
  TheoremPlan plan;
  ContractionEstimate contraction;
  AlgoParams params;       // as actually used (after overrides)
  long max_outer_used = 0;
  double gamma_used = 0.0;  // inexact-gd only
  std::string algorithm;    // "daccgd" or "inexact-gd"
};

// Pure computation (no filesystem writes).
RunArtifacts execute_run(const ExperimentConfig& cfg);

// execute_run + trace.csv, meta.json and (optionally) convergence.svg under
// cfg.output_dir.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

std::string meta_to_json(const ExperimentConfig& cfg, const RunArtifacts& artifacts);

// The lemma checkers applied to a fresh theorem-parameterized run.
std::vector<CheckReport> execute_verify(const ExperimentConfig& cfg);

// execute_verify + verification_report.{txt,csv}; true iff every check passed.
bool verify_experiment(const ExperimentConfig& cfg);

struct SweepPoint {
  double kappa = 0.0;
  std::int64_t grad_evals_to_eps = -1;  // -1 if epsilon was not reached
  std::int64_t comm_rounds = 0;
  long iterations = 0;
  bool reached_epsilon = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double slope = 0.0;  // log-log fit of grad_evals against kappa
};

SweepResult execute_sweep(const ExperimentConfig& cfg);

// execute_sweep + per-kappa artifacts and summary.csv under cfg.output_dir.
SweepResult sweep_experiment(const ExperimentConfig& cfg);

// Least-squares slope of log10(y) against log10(x); needs >= 2 points.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace daccgd
