#pragma once

#include "daccgd/objectives.hpp"

namespace daccgd {

// Oracle constants under which the accelerated scheme runs.
inline double oracle_smoothness(double l_g) { return 2.0 * l_g; }
inline double oracle_strong_convexity(double mu_g) { return 0.5 * mu_g; }

// Consensus accuracy target: delta' = (n eps / 32) mu_g^{3/2} / (L_g^{1/2} L_l^2)
double compute_delta_prime(double eps, int n, double mu_g, double l_g, double l_l);

// Oracle error: delta = (1/2n)(L_l^2/L_g + 2 L_l^2/mu_g + L_l - mu_l) delta'
double compute_delta(double delta_prime, int n, double mu_g, double l_g, double mu_l, double l_l);

// Gradient computations per node: N = ceil(2 sqrt(L_g/mu_g) log(2 L_g dist0^2 / eps)), >= 1
long compute_outer_iterations(double eps, double l_g, double mu_g, double dist0);

// Neighborhood radius for the consensus subroutine:
// sqrt(D) = (2 L_l/sqrt(L mu) + 1) sqrt(delta')
//         + (L_l/mu) sqrt(n) (dist0^2 + 8 delta'/sqrt(L mu))^{1/2}
//         + 2 grad_norm_star / sqrt(L mu)
double compute_d_bound(double delta_prime, double l, double mu, double l_l, int n, double dist0,
                       double grad_norm_star);

// Consensus rounds per outer step: T = ceil((tau / 2 lambda) log(D/delta')), >= 1
int compute_consensus_rounds(double tau, double lambda, double d_bound, double delta_prime);

// Closed-form factors of the N_tot bound: sqrt(D/delta') <= D1/sqrt(eps) + D2
double compute_d1(double mu_g, double l_g, double l_l, int n, double dist0,
                  double grad_norm_star);
double compute_d2(double mu_g, double l_g, double l_l, int n);

struct AlgoParams {
  double l = 0.0;            // oracle smoothness 2 L_g
  double mu = 0.0;           // oracle strong convexity mu_g / 2
  int t = 1;                 // consensus rounds per outer iteration
  double delta_prime = 0.0;  // consensus accuracy target (squared norm)
  double epsilon = 0.0;      // target function gap

  void validate() const;
};

// Everything Theorem 1 pins down for a run, for reporting and for choosing
// (T, N) automatically.
struct TheoremPlan {
  ProblemConstants constants;
  int n = 0;
  double tau = 0.0;
  double lambda = 0.0;
  double epsilon = 0.0;
  double dist0 = 0.0;           // ||u^0 - x*||
  double grad_norm_star = 0.0;  // ||grad F(X*)||_F
  double l = 0.0;               // 2 L_g
  double mu = 0.0;              // mu_g / 2
  double delta_prime = 0.0;
  double delta = 0.0;
  double d_bound = 0.0;
  long n_outer = 0;         // appendix form of N
  double n_outer_main = 0;  // Eq. 10 form (log(dist0^2 / (2 eps L_g))), unclamped
  int t_rounds = 0;
  double d1 = 0.0;
  double d2 = 0.0;
  long long n_total = 0;  // N * T communication rounds
};

TheoremPlan plan_theorem(const ProblemConstants& c, int n, double tau, double lambda, double eps,
                         double dist0, double grad_norm_star);

inline AlgoParams algo_params_from_plan(const TheoremPlan& plan) {
  AlgoParams p;
  p.l = plan.l;
  p.mu = plan.mu;
  p.t = plan.t_rounds;
  p.delta_prime = plan.delta_prime;
  p.epsilon = plan.epsilon;
  p.validate();
  return p;
}

}  // namespace daccgd
