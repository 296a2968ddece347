#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace daccgd {

// One outer iteration. The first five fields make up trace.csv; the rest
// feed the theory checkers (mean iterates, per-sequence consensus errors,
// coefficient state).
struct TraceRow {
  long iter = 0;
  std::int64_t grad_evals = 0;   // cumulative, per node
  std::int64_t comm_rounds = 0;  // cumulative
  double f_gap = 0.0;            // f(x_mean) - f*
  double consensus_err_sq = 0.0; // ||X - Xbar||^2

  double u_err_sq = 0.0;  // ||U - Ubar||^2
  double y_err_sq = 0.0;  // ||Y - Ybar||^2 (0 at iter 0)
  double v_err_sq = 0.0;  // ||V - Vbar||^2 before consensus (0 at iter 0)
  double alpha = 0.0;
  double a_big = 0.0;   // A^k
  double sum_a = 0.0;   // sum of A^1..A^k
  Eigen::VectorXd x_mean, u_mean, y_mean;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  double f_star = 0.0;
  Eigen::VectorXd x_star;
  Eigen::MatrixXd final_x, final_u;  // stacked states at the last iteration
  bool reached_epsilon = false;
  long iterations = 0;  // outer iterations actually performed

  const TraceRow& back() const { return rows.back(); }
};

// "iter,grad_evals,comm_rounds,f_gap,consensus_err_sq" plus one row per
// iteration; doubles rendered with %.17g so reruns are byte-identical.
std::string trace_to_csv(const RunTrace& trace);
void write_trace_csv(const RunTrace& trace, const std::string& path);

}  // namespace daccgd
