#include "daccgd/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "daccgd/coefficients.hpp"

namespace daccgd {
namespace {

void check_finite(const DistributedState& x, const char* which, long iter) {
  if (!x.allFinite())
    throw std::runtime_error(std::string("daccgd divergence: ") + which +
                             " became non-finite at iteration " + std::to_string(iter));
}

TraceRow make_row(const ProblemInstance& p, const DistributedState& x, const DistributedState& u,
                  double f_star, long iter, std::int64_t grad_evals, std::int64_t comm_rounds) {
  TraceRow row;
  row.iter = iter;
  row.grad_evals = grad_evals;
  row.comm_rounds = comm_rounds;
  row.x_mean = row_mean(x);
  row.u_mean = row_mean(u);
  row.f_gap = p.f(row.x_mean) - f_star;
  row.consensus_err_sq = consensus_error_sq(x);
  row.u_err_sq = consensus_error_sq(u);
  return row;
}

}  // namespace

RunTrace run_daccgd(const ProblemInstance& p, MixingStream& stream, const AlgoParams& params,
                    const Eigen::VectorXd& x0, long max_outer, const Minimizer& ref) {
  params.validate();
  if (x0.size() != p.dim()) throw std::invalid_argument("run_daccgd: x0 dimension mismatch");
  if (stream.sequence().n() != p.num_agents())
    throw std::invalid_argument("run_daccgd: network size does not match agent count");
  if (max_outer < 0) throw std::invalid_argument("run_daccgd: negative max_outer");

  const int n = p.num_agents();
  const double l = params.l, mu = params.mu;

  RunTrace trace;
  trace.x_star = ref.x;
  trace.f_star = ref.f_value;

  DistributedState x = replicate_rows(x0, n);
  DistributedState u = x;
  CoefficientState coef;
  ConsensusCounter counter;
  std::int64_t grad_evals = 0;

  {
    TraceRow row = make_row(p, x, u, trace.f_star, 0, grad_evals, counter.rounds_total);
    row.y_mean = x0;
    trace.rows.push_back(std::move(row));
    trace.reached_epsilon = trace.rows.back().f_gap <= params.epsilon;
  }

  for (long k = 0; k < max_outer && !trace.reached_epsilon; ++k) {
    CoefficientState next = next_coefficients(coef, l, mu);
    double alpha = next.alpha, a_prev = coef.a, a_next = next.a;

    DistributedState y = (alpha * u + a_prev * x) / a_next;
    DistributedState g = p.stacked_gradient(y);
    ++grad_evals;

    // prox step of the inexact accelerated scheme (exact argmin of the
    // regularized model), then the consensus projection
    DistributedState v =
        (alpha * mu * y + (1.0 + a_prev * mu) * u - alpha * g) / (1.0 + a_next * mu);
    double v_err = consensus_error_sq(v);
    u = consensus(v, stream, params.t, counter);
    x = (alpha * u + a_prev * x) / a_next;
    coef = next;

    check_finite(x, "X", k + 1);
    check_finite(u, "U", k + 1);

    TraceRow row = make_row(p, x, u, trace.f_star, k + 1, grad_evals, counter.rounds_total);
    row.y_mean = row_mean(y);
    row.y_err_sq = consensus_error_sq(y);
    row.v_err_sq = v_err;
    row.alpha = coef.alpha;
    row.a_big = coef.a;
    row.sum_a = coef.sum_a;
    if (!std::isfinite(row.f_gap))
      throw std::runtime_error("daccgd divergence: f_gap non-finite at iteration " +
                               std::to_string(k + 1));
    trace.reached_epsilon = row.f_gap <= params.epsilon;
    trace.rows.push_back(std::move(row));
  }
  trace.iterations = trace.rows.back().iter;
  trace.final_x = x;
  trace.final_u = u;
  return trace;
}

RunTrace run_daccgd(const ProblemInstance& p, const GraphSequence& seq, const AlgoParams& params,
                    const Eigen::VectorXd& x0, long max_outer) {
  MixingStream stream(seq);
  Minimizer ref = minimizer_oracle(p);
  return run_daccgd(p, stream, params, x0, max_outer, ref);
}

RunTrace run_inexact_gd(const ProblemInstance& p, const GraphSequence& seq, double gamma,
                        int t_rounds, long max_iter, double epsilon) {
  MixingStream stream(seq);
  Minimizer ref = minimizer_oracle(p);
  return run_inexact_gd(p, stream, gamma, t_rounds, max_iter, epsilon, ref);
}

RunTrace run_inexact_gd(const ProblemInstance& p, MixingStream& stream, double gamma,
                        int t_rounds, long max_iter, double epsilon, const Minimizer& ref) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("run_inexact_gd: gamma must be nonnegative");
  if (t_rounds < 0) throw std::invalid_argument("run_inexact_gd: negative round count");
  if (stream.sequence().n() != p.num_agents())
    throw std::invalid_argument("run_inexact_gd: network size does not match agent count");

  RunTrace trace;
  trace.x_star = ref.x;
  trace.f_star = ref.f_value;

  DistributedState x = DistributedState::Zero(p.num_agents(), p.dim());
  ConsensusCounter counter;
  std::int64_t grad_evals = 0;

  trace.rows.push_back(make_row(p, x, x, trace.f_star, 0, grad_evals, counter.rounds_total));
  trace.reached_epsilon = trace.rows.back().f_gap <= epsilon;

  for (long k = 0; k < max_iter && !trace.reached_epsilon; ++k) {
    DistributedState g = p.stacked_gradient(x);
    ++grad_evals;
    x = consensus(x - gamma * g, stream, t_rounds, counter);
    check_finite(x, "X", k + 1);
    TraceRow row = make_row(p, x, x, trace.f_star, k + 1, grad_evals, counter.rounds_total);
    if (!std::isfinite(row.f_gap))
      throw std::runtime_error("inexact gd divergence: f_gap non-finite at iteration " +
                               std::to_string(k + 1));
    trace.reached_epsilon = row.f_gap <= epsilon;
    trace.rows.push_back(std::move(row));
  }
  trace.iterations = trace.rows.back().iter;
  trace.final_x = x;
  trace.final_u = x;
  return trace;
}

}  // namespace daccgd
