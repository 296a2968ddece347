#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "daccgd/experiment.hpp"
#include "daccgd/svg_plot.hpp"

using namespace daccgd;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.seed = 3;
  cfg.problem.agents = 6;
  cfg.problem.dim = 3;
  cfg.problem.kappa_g = 25.0;
  cfg.graph.topology = GraphTopology::Ring;
  cfg.algorithm.epsilon = 1e-5;
  return cfg;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) : path(fs::temp_directory_path() / tag) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("execute_run follows the theorem schedule") {
  RunArtifacts a = execute_run(tiny_config());
  CHECK(a.algorithm == "daccgd");
  CHECK(a.trace.reached_epsilon);
  CHECK(a.trace.iterations <= a.plan.n_outer);
  CHECK(a.max_outer_used == a.plan.n_outer);  // default cap is far larger
  CHECK(a.params.t == a.plan.t_rounds);
  CHECK(a.trace.back().f_gap <= 1e-5);

  // counters never move backwards
  for (std::size_t k = 1; k < a.trace.rows.size(); ++k) {
    CHECK(a.trace.rows[k].grad_evals == a.trace.rows[k - 1].grad_evals + 1);
    CHECK(a.trace.rows[k].comm_rounds == a.trace.rows[k - 1].comm_rounds + a.params.t);
  }
}

TEST_CASE("t_override switches to the explicit iteration cap") {
  ExperimentConfig cfg = tiny_config();
  cfg.algorithm.t_override = 2;
  cfg.algorithm.max_outer = 17;
  cfg.algorithm.epsilon = 1e-14;  // unreachable with T = 2 on a ring
  RunArtifacts a = execute_run(cfg);
  CHECK(a.params.t == 2);
  CHECK(a.max_outer_used == 17);
  CHECK(a.trace.iterations == 17);
}

TEST_CASE("early_exit=false runs to the cap") {
  ExperimentConfig cfg = tiny_config();
  cfg.algorithm.early_exit = false;
  cfg.algorithm.max_outer = 20;
  RunArtifacts a = execute_run(cfg);
  CHECK(a.trace.iterations == 20);
  CHECK(a.trace.rows.size() == 21);
}

TEST_CASE("inexact gd defaults its step size") {
  ExperimentConfig cfg = tiny_config();
  cfg.algorithm.kind = AlgorithmKind::InexactGd;
  cfg.algorithm.max_outer = 50;
  cfg.algorithm.epsilon = 1e-3;
  RunArtifacts a = execute_run(cfg);
  CHECK(a.algorithm == "inexact-gd");
  CHECK(a.gamma_used > 0.0);

  std::string meta = meta_to_json(cfg, a);
  CHECK(meta.find("\"gamma\"") != std::string::npos);
}

TEST_CASE("meta json carries the whole parameter sheet") {
  ExperimentConfig cfg = tiny_config();
  RunArtifacts a = execute_run(cfg);
  std::string meta = meta_to_json(cfg, a);
  for (const char* key :
       {"algorithm", "seed", "agents", "epsilon", "mu_l", "L_l", "mu_g", "L_g", "kappa_g",
        "kappa_l", "oracle_L", "oracle_mu", "tau", "lambda", "chi", "delta_prime", "delta",
        "dist0", "grad_norm_star", "D", "D1", "D2", "N", "N_main_text", "T_theorem", "T_used",
        "N_tot", "max_outer_used", "iterations_run", "reached_epsilon", "f_star", "final_f_gap",
        "final_consensus_err_sq", "grad_evals_total", "comm_rounds_total"}) {
    CAPTURE(key);
    CHECK(meta.find("\"" + std::string(key) + "\"") != std::string::npos);
  }
  CHECK(meta.find("\"gamma\"") == std::string::npos);  // daccgd has no step size
}

TEST_CASE("run_experiment writes deterministic artifacts") {
  TempDir dir_a("daccgd_test_run_a");
  TempDir dir_b("daccgd_test_run_b");
  ExperimentConfig cfg = tiny_config();
  cfg.output_dir = dir_a.path.string();
  run_experiment(cfg);

  CHECK(fs::exists(dir_a.path / "trace.csv"));
  CHECK(fs::exists(dir_a.path / "meta.json"));
  CHECK(fs::exists(dir_a.path / "convergence.svg"));

  std::string csv = slurp(dir_a.path / "trace.csv");
  CHECK(csv.rfind("iter,grad_evals,comm_rounds,f_gap,consensus_err_sq\n", 0) == 0);
  CHECK(csv.back() == '\n');

  std::string svg = slurp(dir_a.path / "convergence.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);

  cfg.output_dir = dir_b.path.string();
  run_experiment(cfg);
  CHECK(slurp(dir_b.path / "trace.csv") == csv);
  CHECK(slurp(dir_b.path / "meta.json") == slurp(dir_a.path / "meta.json"));
}

TEST_CASE("plot=false skips the svg") {
  TempDir dir("daccgd_test_noplot");
  ExperimentConfig cfg = tiny_config();
  cfg.plot = false;
  cfg.output_dir = dir.path.string();
  run_experiment(cfg);
  CHECK(fs::exists(dir.path / "trace.csv"));
  CHECK(!fs::exists(dir.path / "convergence.svg"));
}

TEST_CASE("trace csv matches the recorded rows") {
  RunArtifacts a = execute_run(tiny_config());
  std::string csv = trace_to_csv(a.trace);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "iter,grad_evals,comm_rounds,f_gap,consensus_err_sq");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == a.trace.rows.size());
}

TEST_CASE("verification suite passes on a theorem-parameterized run") {
  ExperimentConfig cfg = tiny_config();
  cfg.verify.test_points = 60;
  cfg.verify.lemma2_max_k = 200;
  std::vector<CheckReport> reports = execute_verify(cfg);
  REQUIRE(reports.size() == 7);
  CHECK(reports[0].name == "metropolis_mixing");
  CHECK(reports[1].name == "network_contraction");
  CHECK(reports[2].name == "lemma2_coefficient_properties");
  CHECK(reports[3].name == "lemma1_model_inequality");
  CHECK(reports[4].name == "lemma3_convergence_bound");
  CHECK(reports[5].name == "lemma4_consensus_maintenance");
  CHECK(reports[6].name == "theorem1_convergence");
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.pass);
  }
}

TEST_CASE("verify_experiment writes the report files") {
  TempDir dir("daccgd_test_verify");
  ExperimentConfig cfg = tiny_config();
  cfg.verify.test_points = 40;
  cfg.verify.lemma2_max_k = 100;
  cfg.output_dir = dir.path.string();
  CHECK(verify_experiment(cfg));
  std::string txt = slurp(dir.path / "verification_report.txt");
  CHECK(txt.find("theorem1_convergence: PASS") != std::string::npos);
  std::string csv = slurp(dir.path / "verification_report.csv");
  CHECK(csv.rfind("check,pass,worst_slack,checks,violations\n", 0) == 0);
}

TEST_CASE("sweep produces per-kappa artifacts and a sane slope") {
  TempDir dir("daccgd_test_sweep");
  ExperimentConfig cfg = tiny_config();
  cfg.mode = RunMode::Sweep;
  cfg.sweep.kappa_values = {10.0, 100.0};
  cfg.output_dir = dir.path.string();
  SweepResult result = sweep_experiment(cfg);

  REQUIRE(result.points.size() == 2);
  CHECK(result.points[0].kappa == 10.0);
  CHECK(result.points[0].reached_epsilon);
  CHECK(result.points[1].reached_epsilon);
  CHECK(result.points[1].grad_evals_to_eps > result.points[0].grad_evals_to_eps);
  CHECK(result.slope > 0.2);
  CHECK(result.slope < 0.8);

  CHECK(fs::exists(dir.path / "kappa_10" / "trace.csv"));
  CHECK(fs::exists(dir.path / "kappa_100" / "trace.csv"));
  CHECK(fs::exists(dir.path / "sweep.json"));
  CHECK(fs::exists(dir.path / "convergence.svg"));

  std::string summary = slurp(dir.path / "summary.csv");
  CHECK(summary.rfind("kappa,grad_evals_to_eps,comm_rounds,iterations,reached_epsilon\n", 0) ==
        0);
  CHECK(summary.find("\n10,") != std::string::npos);
  CHECK(summary.find("\n100,") != std::string::npos);
}

TEST_CASE("sweep refuses dataset problems") {
  ExperimentConfig cfg = tiny_config();
  cfg.problem.kind = ProblemKind::Logistic;
  cfg.problem.dataset = std::string(TEST_DATA_DIR) + "/a9a_sample.libsvm";
  cfg.problem.theta = 0.1;
  CHECK_THROWS_AS(execute_sweep(cfg), ConfigError);
  CHECK_THROWS_AS(sweep_experiment(cfg), ConfigError);
}

TEST_CASE("log-log slope fitting") {
  CHECK(log_log_slope({1.0, 10.0, 100.0}, {1.0, std::sqrt(10.0), 10.0}) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(log_log_slope({1.0, 100.0}, {5.0, 5.0}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(log_log_slope({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(log_log_slope({1.0, 2.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(log_log_slope({1.0, -2.0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(log_log_slope({3.0, 3.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("svg renderer basics") {
  RunArtifacts a = execute_run(tiny_config());
  std::string one = render_convergence_svg({{"run", &a.trace}});
  CHECK(one.rfind("<svg", 0) == 0);
  CHECK(one.find("polyline") != std::string::npos);
  CHECK(one.find("run") != std::string::npos);  // legend label
  CHECK(one == render_convergence_svg({{"run", &a.trace}}));  // deterministic

  CHECK_THROWS_AS(render_convergence_svg({}), std::invalid_argument);

  // exact zeros in the gap column must clamp, not blow up the log scale
  RunTrace flat = a.trace;
  for (auto& row : flat.rows) row.f_gap = 0.0;
  std::string clamped = render_convergence_svg({{"flat", &flat}});
  CHECK(clamped.find("nan") == std::string::npos);
  CHECK(clamped.find("inf") == std::string::npos);
}
