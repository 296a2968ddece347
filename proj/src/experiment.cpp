#include "daccgd/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "daccgd/consensus.hpp"
#include "daccgd/log.hpp"
#include "daccgd/optimizer.hpp"
#include "daccgd/rng.hpp"
#include "daccgd/svg_plot.hpp"

namespace daccgd {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct ResolvedSetup {
  ProblemInstance problem;
  GraphSequence seq;
  ContractionEstimate contraction;
  Minimizer ref;
  TheoremPlan plan;
  Eigen::VectorXd x0;
};

ResolvedSetup resolve_setup(const ExperimentConfig& cfg) {
  ProblemInstance problem = build_problem(cfg.problem, cfg.seed);
  GraphSequence seq = build_graph_sequence(cfg.graph, problem.num_agents(), cfg.seed);
  ContractionEstimate contraction =
      estimate_contraction(seq, seq.tau(), cfg.graph.contraction_horizon);

  Minimizer ref = minimizer_oracle(problem);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(problem.dim());
  double dist0 = (x0 - ref.x).norm();
  double grad_star =
      problem.stacked_gradient(replicate_rows(ref.x, problem.num_agents())).norm();
  TheoremPlan plan = plan_theorem(problem.constants(), problem.num_agents(), contraction.tau,
                                  contraction.lambda, cfg.algorithm.epsilon, dist0, grad_star);
  return {std::move(problem), std::move(seq), contraction, std::move(ref), plan, std::move(x0)};
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string kappa_dir_name(double kappa) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "kappa_%g", kappa);
  return buf;
}

}  // namespace

RunArtifacts execute_run(const ExperimentConfig& cfg) {
  ResolvedSetup setup = resolve_setup(cfg);

  RunArtifacts out;
  out.plan = setup.plan;
  out.contraction = setup.contraction;
  out.params = algo_params_from_plan(setup.plan);
  if (cfg.algorithm.t_override) out.params.t = *cfg.algorithm.t_override;
  if (!cfg.algorithm.early_exit)
    out.params.epsilon = std::numeric_limits<double>::denorm_min();

  MixingStream stream(setup.seq);
  if (cfg.algorithm.kind == AlgorithmKind::Daccgd) {
    out.algorithm = "daccgd";
    // theorem mode runs the a-priori N; a T override means we are off the
    // theorem schedule, so only the explicit cap applies
    out.max_outer_used = cfg.algorithm.t_override
                             ? cfg.algorithm.max_outer
                             : std::min<long>(setup.plan.n_outer, cfg.algorithm.max_outer);
    log_info("daccgd: n=" + std::to_string(setup.problem.num_agents()) +
             " T=" + std::to_string(out.params.t) +
             " max_outer=" + std::to_string(out.max_outer_used));
    out.trace =
        run_daccgd(setup.problem, stream, out.params, setup.x0, out.max_outer_used, setup.ref);
  } else {
    out.algorithm = "inexact-gd";
    out.max_outer_used = cfg.algorithm.max_outer;
    out.gamma_used = cfg.algorithm.gamma.value_or(1.0 / setup.problem.constants().l_l);
    int t = cfg.algorithm.t_override.value_or(setup.plan.t_rounds);
    log_info("inexact-gd: gamma=" + std::to_string(out.gamma_used) + " T=" + std::to_string(t));
    out.trace = run_inexact_gd(setup.problem, stream, out.gamma_used, t, out.max_outer_used,
                               cfg.algorithm.early_exit
                                   ? cfg.algorithm.epsilon
                                   : std::numeric_limits<double>::denorm_min(),
                               setup.ref);
  }
  return out;
}

std::string meta_to_json(const ExperimentConfig& cfg, const RunArtifacts& a) {
  const TheoremPlan& plan = a.plan;
  json meta;
  meta["algorithm"] = a.algorithm;
  meta["seed"] = cfg.seed;
  meta["agents"] = plan.n;
  meta["epsilon"] = plan.epsilon;
  meta["mu_l"] = plan.constants.mu_l;
  meta["L_l"] = plan.constants.l_l;
  meta["mu_g"] = plan.constants.mu_g;
  meta["L_g"] = plan.constants.l_g;
  meta["kappa_g"] = plan.constants.kappa_g();
  meta["kappa_l"] = plan.constants.kappa_l();
  meta["oracle_L"] = plan.l;
  meta["oracle_mu"] = plan.mu;
  meta["tau"] = plan.tau;
  meta["lambda"] = plan.lambda;
  meta["chi"] = a.contraction.chi;
  meta["delta_prime"] = plan.delta_prime;
  meta["delta"] = plan.delta;
  meta["dist0"] = plan.dist0;
  meta["grad_norm_star"] = plan.grad_norm_star;
  meta["D"] = plan.d_bound;
  meta["D1"] = plan.d1;
  meta["D2"] = plan.d2;
  meta["N"] = plan.n_outer;
  meta["N_main_text"] = plan.n_outer_main;  // Eq.-10 display form, for audit
  meta["T_theorem"] = plan.t_rounds;
  meta["T_used"] = a.params.t;
  meta["N_tot"] = plan.n_total;
  meta["max_outer_used"] = a.max_outer_used;
  if (a.algorithm == "inexact-gd") meta["gamma"] = a.gamma_used;
  meta["iterations_run"] = a.trace.iterations;
  meta["reached_epsilon"] = a.trace.reached_epsilon;
  meta["f_star"] = a.trace.f_star;
  meta["final_f_gap"] = a.trace.back().f_gap;
  meta["final_consensus_err_sq"] = a.trace.back().consensus_err_sq;
  meta["grad_evals_total"] = a.trace.back().grad_evals;
  meta["comm_rounds_total"] = a.trace.back().comm_rounds;
  return meta.dump(2) + "\n";
}

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
  RunArtifacts artifacts = execute_run(cfg);
  fs::create_directories(cfg.output_dir);
  write_trace_csv(artifacts.trace, cfg.output_dir + "/trace.csv");
  write_text(cfg.output_dir + "/meta.json", meta_to_json(cfg, artifacts));
  if (cfg.plot)
    write_convergence_svg({{artifacts.algorithm, &artifacts.trace}},
                          cfg.output_dir + "/convergence.svg");
  log_info("run finished: iterations=" + std::to_string(artifacts.trace.iterations) +
           " reached_epsilon=" + std::to_string(artifacts.trace.reached_epsilon));
  return artifacts;
}

std::vector<CheckReport> execute_verify(const ExperimentConfig& cfg) {
  ResolvedSetup setup = resolve_setup(cfg);
  AlgoParams params = algo_params_from_plan(setup.plan);
  if (cfg.algorithm.t_override) params.t = *cfg.algorithm.t_override;
  long max_outer = std::min<long>(setup.plan.n_outer, cfg.algorithm.max_outer);

  MixingStream stream(setup.seq);
  RunTrace trace = run_daccgd(setup.problem, stream, params, setup.x0, max_outer, setup.ref);

  std::vector<CheckReport> reports;

  {
    CheckReport r;
    r.name = "metropolis_mixing";
    r.worst_slack = std::numeric_limits<double>::infinity();
    const double tol = 1e-12;
    std::int64_t phases = setup.seq.period() > 0 ? setup.seq.period() : 20;
    for (std::int64_t k = 0; k < phases; ++k) {
      MixingReport mr = verify_mixing(metropolis_weights(setup.seq.edge_set_at(k)), tol);
      double dev = std::max({mr.max_row_deviation, mr.max_col_deviation, mr.max_off_edge_abs,
                             std::max(0.0, -mr.min_entry)});
      r.worst_slack = std::min(r.worst_slack, tol - dev);
      ++r.checks;
      if (!mr.pass()) ++r.violations;
    }
    r.pass = r.violations == 0;
    reports.push_back(std::move(r));
  }

  {
    CheckReport r;
    r.name = "network_contraction";
    r.worst_slack = std::numeric_limits<double>::infinity();
    const int n = setup.seq.n();
    Eigen::MatrixXd window = window_product(setup.seq, setup.seq.tau() - 1, setup.seq.tau());
    Rng rng(stream_seed(cfg.seed, 9001));
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXd state(n, 3);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < 3; ++j) state(i, j) = rng.normal();
      double before = std::sqrt(consensus_error_sq(state));
      double after = std::sqrt(consensus_error_sq(window * state));
      double slack = (1.0 - setup.contraction.lambda) * before - after;
      r.worst_slack = std::min(r.worst_slack, slack / std::max(before, 1e-300));
      ++r.checks;
      if (slack < -1e-10 * before) ++r.violations;
    }
    r.pass = r.violations == 0 && setup.contraction.lambda > 0.0;
    r.detail = "lambda=" + std::to_string(setup.contraction.lambda);
    reports.push_back(std::move(r));
  }

  reports.push_back(check_lemma2_properties(setup.plan.l, setup.plan.mu, cfg.verify.lemma2_max_k));

  {
    Eigen::VectorXd x_mean = row_mean(trace.final_x);
    auto points =
        sample_test_points(x_mean, trace.x_star, cfg.verify.test_points, cfg.seed);
    reports.push_back(check_model_inequality(setup.problem, trace.final_x, points));
  }

  reports.push_back(check_lemma3_bound(trace, setup.plan.delta, setup.plan.mu));
  reports.push_back(check_lemma4_sufficiency(trace, setup.plan.delta_prime, setup.plan.d_bound));

  {
    CheckReport r;
    r.name = "theorem1_convergence";
    r.checks = 1;
    double gap = trace.back().f_gap;
    r.worst_slack = (setup.plan.epsilon - gap) / setup.plan.epsilon;
    r.pass = trace.reached_epsilon && trace.iterations <= setup.plan.n_outer;
    if (!r.pass) r.violations = 1;
    r.detail = "iterations=" + std::to_string(trace.iterations) +
               " N=" + std::to_string(setup.plan.n_outer);
    reports.push_back(std::move(r));
  }

  return reports;
}

bool verify_experiment(const ExperimentConfig& cfg) {
  std::vector<CheckReport> reports = execute_verify(cfg);
  fs::create_directories(cfg.output_dir);
  write_reports(reports, cfg.output_dir + "/verification_report.txt",
                cfg.output_dir + "/verification_report.csv");
  bool all_pass = true;
  for (const auto& r : reports) {
    log_info(r.summary());
    all_pass = all_pass && r.pass;
  }
  return all_pass;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("log_log_slope: need at least two matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("log_log_slope: values must be positive");
    double lx = std::log10(x[i]), ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("log_log_slope: degenerate x values");
  return (n * sxy - sx * sy) / denom;
}

SweepResult execute_sweep(const ExperimentConfig& cfg) {
  if (cfg.problem.kind != ProblemKind::SyntheticQuadratic)
    throw ConfigError("sweep mode requires a synthetic-quadratic problem");

  SweepResult result;
  std::vector<double> fit_x, fit_y;
  for (double kappa : cfg.sweep.kappa_values) {
    ExperimentConfig point_cfg = cfg;
    point_cfg.problem.kappa_g = kappa;
    RunArtifacts artifacts = execute_run(point_cfg);

    SweepPoint point;
    point.kappa = kappa;
    point.reached_epsilon = artifacts.trace.reached_epsilon;
    point.iterations = artifacts.trace.iterations;
    point.comm_rounds = artifacts.trace.back().comm_rounds;
    if (point.reached_epsilon) {
      point.grad_evals_to_eps = artifacts.trace.back().grad_evals;
      fit_x.push_back(kappa);
      fit_y.push_back(static_cast<double>(point.grad_evals_to_eps));
    }
    log_info("sweep kappa=" + std::to_string(kappa) +
             " grad_evals=" + std::to_string(point.grad_evals_to_eps));
    result.points.push_back(point);
  }
  if (fit_x.size() >= 2) result.slope = log_log_slope(fit_x, fit_y);
  return result;
}

SweepResult sweep_experiment(const ExperimentConfig& cfg) {
  if (cfg.problem.kind != ProblemKind::SyntheticQuadratic)
    throw ConfigError("sweep mode requires a synthetic-quadratic problem");
  fs::create_directories(cfg.output_dir);

  SweepResult result;
  std::vector<double> fit_x, fit_y;
  std::vector<RunArtifacts> all_artifacts;
  for (double kappa : cfg.sweep.kappa_values) {
    ExperimentConfig point_cfg = cfg;
    point_cfg.problem.kappa_g = kappa;
    point_cfg.output_dir = cfg.output_dir + "/" + kappa_dir_name(kappa);
    point_cfg.mode = RunMode::Run;
    RunArtifacts artifacts = run_experiment(point_cfg);

    SweepPoint point;
    point.kappa = kappa;
    point.reached_epsilon = artifacts.trace.reached_epsilon;
    point.iterations = artifacts.trace.iterations;
    point.comm_rounds = artifacts.trace.back().comm_rounds;
    if (point.reached_epsilon) {
      point.grad_evals_to_eps = artifacts.trace.back().grad_evals;
      fit_x.push_back(kappa);
      fit_y.push_back(static_cast<double>(point.grad_evals_to_eps));
    }
    result.points.push_back(point);
    all_artifacts.push_back(std::move(artifacts));
  }
  if (fit_x.size() >= 2) result.slope = log_log_slope(fit_x, fit_y);

  std::string summary = "kappa,grad_evals_to_eps,comm_rounds,iterations,reached_epsilon\n";
  char buf[160];
  for (const auto& p : result.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%lld,%lld,%ld,%d\n", p.kappa,
                  static_cast<long long>(p.grad_evals_to_eps),
                  static_cast<long long>(p.comm_rounds), p.iterations,
                  p.reached_epsilon ? 1 : 0);
    summary += buf;
  }
  write_text(cfg.output_dir + "/summary.csv", summary);

  json sweep_meta;
  sweep_meta["slope"] = result.slope;
  sweep_meta["kappa_values"] = cfg.sweep.kappa_values;
  write_text(cfg.output_dir + "/sweep.json", sweep_meta.dump(2) + "\n");

  if (cfg.plot) {
    std::vector<LabeledTrace> traces;
    for (std::size_t i = 0; i < all_artifacts.size(); ++i)
      traces.push_back({kappa_dir_name(result.points[i].kappa), &all_artifacts[i].trace});
    write_convergence_svg(traces, cfg.output_dir + "/convergence.svg");
  }
  log_info("sweep slope=" + std::to_string(result.slope));
  return result;
}

}  // namespace daccgd
