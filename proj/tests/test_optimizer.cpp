#include <doctest.h>

#include <cmath>

#include "daccgd/optimizer.hpp"
#include "support/test_oracles.hpp"

using namespace daccgd;

namespace {

LocalFunction isotropic_quadratic(double a, const Eigen::VectorXd& c) {
  int d = static_cast<int>(c.size());
  Eigen::MatrixXd m = std::sqrt(a) * Eigen::MatrixXd::Identity(d, d);
  return LocalFunction::quadratic(m, m * c);
}

AlgoParams oracle_params(const ProblemInstance& p, int t, double epsilon) {
  AlgoParams params;
  params.l = oracle_smoothness(p.constants().l_g);
  params.mu = oracle_strong_convexity(p.constants().mu_g);
  params.t = t;
  params.delta_prime = 1e-9;
  params.epsilon = epsilon;
  return params;
}

}  // namespace

TEST_CASE("single agent reproduces the averaged recursion") {
  Eigen::MatrixXd a(2, 2);
  a << 2, 0.5, 0, 1;
  Eigen::VectorXd b(2);
  b << 1, -2;
  ProblemInstance p({LocalFunction::quadratic(a, b)});
  AlgoParams params = oracle_params(p, 1, 1e-14);
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(2, 3.0);

  RunTrace trace = run_daccgd(p, GraphSequence::static_graph(complete_graph(1)), params, x0, 40);

  test_oracles::ReferenceRecursion ref(params.l, params.mu, x0);
  const LocalFunction& f = p.locals()[0];
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    ref.step([&](const Eigen::VectorXd& y) { return f.gradient(y); });
    CHECK((trace.rows[k].x_mean - ref.x).norm() <= 1e-9);
    CHECK((trace.rows[k].u_mean - ref.u).norm() <= 1e-9);
  }
  CHECK(trace.rows.size() > 5);  // the comparison actually covered iterations
}

TEST_CASE("complete graph with identical agents matches the recursion too") {
  Eigen::VectorXd c(2);
  c << 1, -1;
  std::vector<LocalFunction> locals(5, isotropic_quadratic(2.0, c));
  ProblemInstance p(std::move(locals));
  AlgoParams params = oracle_params(p, 1, 1e-12);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);

  RunTrace trace = run_daccgd(p, GraphSequence::static_graph(complete_graph(5)), params, x0, 60);

  test_oracles::ReferenceRecursion ref(params.l, params.mu, x0);
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    ref.step([&](const Eigen::VectorXd& y) {
      return p.average_gradient(replicate_rows(y, 5));
    });
    CHECK((trace.rows[k].x_mean - ref.x).norm() <= 1e-9);
    // exact averaging keeps every iterate consensual
    CHECK(trace.rows[k].consensus_err_sq <= 1e-24);
    CHECK(trace.rows[k].u_err_sq <= 1e-24);
  }
}

TEST_CASE("identical agents converge within the accelerated envelope") {
  Eigen::VectorXd c(3);
  c << 1, -1, 0.5;
  std::vector<LocalFunction> locals(4, isotropic_quadratic(2.0, c));
  ProblemInstance p(std::move(locals));
  double dist0 = c.norm();  // start at zero
  long n_outer =
      compute_outer_iterations(1e-10, p.constants().l_g, p.constants().mu_g, dist0);

  AlgoParams params = oracle_params(p, 1, 1e-10);
  RunTrace trace = run_daccgd(p, GraphSequence::static_graph(complete_graph(4)), params,
                              Eigen::VectorXd::Zero(3), n_outer);
  CHECK(trace.reached_epsilon);
  CHECK(trace.iterations <= n_outer);
  // The f-gap is not monotone step to step (momentum ripples are normal for
  // accelerated methods), but with exact averaging it must stay under the
  // dist0^2 / (2 A^k) envelope at every iteration.
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    const double bound = dist0 * dist0 / (2.0 * trace.rows[k].a_big);
    CHECK(trace.rows[k].f_gap <= bound * (1.0 + 1e-9) + 1e-15);
  }
}

TEST_CASE("heterogeneous agents on a ring find the joint minimizer") {
  std::vector<LocalFunction> locals;
  double as[] = {1, 2, 3}, cs[] = {0, 1, 2};
  for (int i = 0; i < 3; ++i)
    locals.push_back(isotropic_quadratic(as[i], Eigen::VectorXd::Constant(1, cs[i])));
  ProblemInstance p(std::move(locals));

  AlgoParams params = oracle_params(p, 40, 1e-11);
  RunTrace trace = run_daccgd(p, GraphSequence::static_graph(ring_graph(3)), params,
                              Eigen::VectorXd::Zero(1), 400);
  CHECK(trace.reached_epsilon);
  CHECK(trace.rows.back().x_mean(0) == doctest::Approx(8.0 / 6.0).epsilon(1e-4));
  CHECK(trace.final_x.rows() == 3);
  CHECK(consensus_error_sq(trace.final_x) <= 1e-8);
}

TEST_CASE("early exit and counter accounting") {
  std::vector<LocalFunction> locals(4, isotropic_quadratic(1.0, Eigen::Vector2d(2, 0)));
  ProblemInstance p(std::move(locals));
  const int t = 3;
  AlgoParams params = oracle_params(p, t, 1e-3);
  RunTrace trace = run_daccgd(p, GraphSequence::static_graph(ring_graph(4)), params,
                              Eigen::VectorXd::Zero(2), 10000);

  CHECK(trace.reached_epsilon);
  CHECK(trace.iterations < 10000);
  CHECK(trace.rows.size() == static_cast<std::size_t>(trace.iterations) + 1);
  CHECK(trace.rows.back().f_gap <= 1e-3);
  // one gradient per outer step, T gossip rounds per outer step
  for (const TraceRow& row : trace.rows) {
    CHECK(row.grad_evals == row.iter);
    CHECK(row.comm_rounds == row.iter * t);
  }
}

TEST_CASE("row zero describes the consensual start") {
  ProblemInstance p({isotropic_quadratic(1.0, Eigen::Vector2d(1, 1)),
                     isotropic_quadratic(2.0, Eigen::Vector2d(-1, 0))});
  AlgoParams params = oracle_params(p, 2, 1e-15);
  Eigen::VectorXd x0 = Eigen::Vector2d(0.5, 0.5);
  RunTrace trace =
      run_daccgd(p, GraphSequence::static_graph(complete_graph(2)), params, x0, 3);
  const TraceRow& first = trace.rows.front();
  CHECK(first.iter == 0);
  CHECK(first.grad_evals == 0);
  CHECK(first.comm_rounds == 0);
  CHECK(first.consensus_err_sq == 0.0);
  CHECK(first.f_gap == doctest::Approx(p.f(x0) - trace.f_star).epsilon(1e-14));
}

TEST_CASE("an over-optimistic smoothness guess blows up loudly") {
  ProblemInstance p({isotropic_quadratic(2.0, Eigen::Vector2d(1, 1))});
  AlgoParams params;
  params.l = 0.004;  // true oracle smoothness is 4
  params.mu = 1e-12;
  params.t = 1;
  params.delta_prime = 1e-9;
  params.epsilon = 1e-300;
  CHECK_THROWS_WITH_AS(run_daccgd(p, GraphSequence::static_graph(complete_graph(1)), params,
                                  Eigen::VectorXd::Zero(2), 100000),
                       doctest::Contains("divergence"), std::runtime_error);
}

TEST_CASE("argument validation") {
  ProblemInstance p({isotropic_quadratic(1.0, Eigen::Vector2d(0, 0))});
  AlgoParams params = oracle_params(p, 1, 1e-6);
  GraphSequence seq = GraphSequence::static_graph(complete_graph(1));
  CHECK_THROWS_AS(run_daccgd(p, seq, params, Eigen::VectorXd::Zero(3), 10),
                  std::invalid_argument);
  GraphSequence wrong_n = GraphSequence::static_graph(complete_graph(2));
  CHECK_THROWS_AS(run_daccgd(p, wrong_n, params, Eigen::VectorXd::Zero(2), 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_daccgd(p, seq, params, Eigen::VectorXd::Zero(2), -1),
                  std::invalid_argument);
}

TEST_CASE("gd contracts at the textbook rate on one agent") {
  Eigen::MatrixXd a = Eigen::Vector2d(1.0, std::sqrt(3.0)).asDiagonal();
  ProblemInstance p({LocalFunction::quadratic(a, Eigen::Vector2d(1, 3))});
  double l = p.constants().l_l, mu = p.constants().mu_l;
  RunTrace trace = run_inexact_gd(p, GraphSequence::static_graph(complete_graph(1)), 1.0 / l, 1,
                                  200, 1e-13);
  CHECK(trace.reached_epsilon);
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    if (trace.rows[k - 1].f_gap <= 1e-14) break;
    double ratio = trace.rows[k].f_gap / trace.rows[k - 1].f_gap;
    CHECK(ratio <= (1.0 - mu / l) + 1e-12);
  }
}

TEST_CASE("gd with zero step size stays put") {
  ProblemInstance p({isotropic_quadratic(1.0, Eigen::Vector2d(5, 5)),
                     isotropic_quadratic(1.0, Eigen::Vector2d(-5, 5))});
  RunTrace trace =
      run_inexact_gd(p, GraphSequence::static_graph(complete_graph(2)), 0.0, 1, 10, 1e-30);
  CHECK(trace.rows.size() == 11);
  for (const TraceRow& row : trace.rows) {
    CHECK(row.f_gap == trace.rows.front().f_gap);
    CHECK(row.consensus_err_sq == 0.0);  // zero start is already consensual
  }
}

TEST_CASE("gd on a complete graph equals centralized gd") {
  std::vector<LocalFunction> locals;
  double as[] = {1, 2, 4};
  for (int i = 0; i < 3; ++i)
    locals.push_back(isotropic_quadratic(as[i], Eigen::Vector2d(i, -i)));
  ProblemInstance p(std::move(locals));
  double gamma = 1.0 / p.constants().l_l;
  RunTrace trace =
      run_inexact_gd(p, GraphSequence::static_graph(complete_graph(3)), gamma, 1, 30, 1e-30);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(2);
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    y -= gamma * p.average_gradient(replicate_rows(y, 3));
    CHECK((trace.rows[k].x_mean - y).norm() <= 1e-12);
  }
}

TEST_CASE("gd rejects bad arguments") {
  ProblemInstance p({isotropic_quadratic(1.0, Eigen::Vector2d(0, 0))});
  GraphSequence seq = GraphSequence::static_graph(complete_graph(1));
  CHECK_THROWS_AS(run_inexact_gd(p, seq, -0.1, 1, 10, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(run_inexact_gd(p, seq, 0.1, -1, 10, 1e-6), std::invalid_argument);
}
