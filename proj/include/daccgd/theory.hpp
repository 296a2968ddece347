#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "daccgd/objectives.hpp"
#include "daccgd/trace.hpp"

namespace daccgd {

// Inexact first-order model of f at the average point of a stacked state.
struct OracleModelValue {
  double f_model = 0.0;
  Eigen::VectorXd g_model;    // equals average_gradient
  double delta = 0.0;         // oracle error implied by the measured consensus error
  double delta_prime = 0.0;   // ||X - Xbar||^2 actually measured
};

OracleModelValue oracle_model(const ProblemInstance& p, const DistributedState& x_state);

struct CheckReport {
  std::string name;
  bool pass = false;
  double worst_slack = 0.0;  // most negative margin seen (>= 0 means clean pass)
  long checks = 0;
  long violations = 0;
  std::string detail;

  std::string summary() const;
};

std::string reports_to_csv(const std::vector<CheckReport>& reports);
void write_reports(const std::vector<CheckReport>& reports, const std::string& text_path,
                   const std::string& csv_path);

// Two-sided envelope at each test point y:
//   (mu_g/4)||y - xbar||^2 <= f(y) - f_model - <g, y - xbar> <= L_g||y - xbar||^2 + delta
// Slacks are absolute; pass iff every slack >= -1e-9.
CheckReport check_model_inequality(const ProblemInstance& p, const DistributedState& x_state,
                                   const std::vector<Eigen::VectorXd>& y_points);

// Test points in a ball of radius 10 ||x_mean - x_star|| around x_mean (unit
// radius when the two coincide).
std::vector<Eigen::VectorXd> sample_test_points(const Eigen::VectorXd& x_mean,
                                                const Eigen::VectorXd& x_star, int count,
                                                std::uint64_t seed);

// Coefficient growth, run in long double (A^k reaches ~1e352 at kappa = 1):
//   A^k >= (1/L)(1 + sqrt(mu/L)/2)^{2(k-1)}  and  sum_i A^i / A^k <= 1 + sqrt(L/mu)
// Relative slacks; pass iff >= -1e-9.
CheckReport check_lemma2_properties(double l, double mu, long max_k);

// Convergence bound along a recorded run:
//   f_gap(k) <= dist0^2/(2 A^k) + 2 (sum_j A^j) delta / A^k
//   ||u_mean^k - x*||^2 <= (dist0^2 + 4 (sum_j A^j) delta) / (1 + A^k mu)
CheckReport check_lemma3_bound(const RunTrace& trace, double delta, double mu);

// Consensus maintenance along a run: ||U^k - Ubar^k||^2 <= delta' and
// ||V^k - Vbar^k||^2 <= D at every outer step.
CheckReport check_lemma4_sufficiency(const RunTrace& trace, double delta_prime, double d_bound);

}  // namespace daccgd
