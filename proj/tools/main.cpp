#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "daccgd/config.hpp"
#include "daccgd/experiment.hpp"

namespace {

struct CliOverrides {
  std::string output_dir;
  long long seed = -1;
  bool no_plot = false;
  long max_outer = -1;
};

void add_common(CLI::App* sub, std::string& config_path, CliOverrides& ov) {
  sub->add_option("config", config_path, "experiment config file (json)")->required();
  sub->add_option("--output-dir", ov.output_dir, "override output directory");
  sub->add_option("--seed", ov.seed, "override rng seed");
  sub->add_flag("--no-plot", ov.no_plot, "skip convergence.svg");
  sub->add_option("--max-outer", ov.max_outer, "override outer-iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized accelerated gradient descent over time-varying networks"};
  app.require_subcommand(1);

  std::string config_path;
  CliOverrides ov;
  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment, write trace.csv/meta.json");
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the lemma/consensus verification suite");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep kappa_g and fit the scaling slope");
  add_common(run_cmd, config_path, ov);
  add_common(verify_cmd, config_path, ov);
  add_common(sweep_cmd, config_path, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    daccgd::ExperimentConfig cfg = daccgd::load_config(config_path);
    if (!ov.output_dir.empty()) cfg.output_dir = ov.output_dir;
    if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
    if (ov.no_plot) cfg.plot = false;
    if (ov.max_outer >= 0) cfg.algorithm.max_outer = ov.max_outer;

    if (run_cmd->parsed()) {
      cfg.mode = daccgd::RunMode::Run;
      daccgd::run_experiment(cfg);
    } else if (verify_cmd->parsed()) {
      cfg.mode = daccgd::RunMode::Verify;
      if (!daccgd::verify_experiment(cfg)) {
        std::fprintf(stderr, "verification failed (see %s/verification_report.txt)\n",
                     cfg.output_dir.c_str());
        return 2;
      }
    } else {
      cfg.mode = daccgd::RunMode::Sweep;
      daccgd::sweep_experiment(cfg);
    }
  } catch (const daccgd::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
