#include "daccgd/params.hpp"

#include <cmath>
#include <stdexcept>

namespace daccgd {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

double compute_delta_prime(double eps, int n, double mu_g, double l_g, double l_l) {
  require_positive(eps, "eps");
  require_positive(static_cast<double>(n), "n");
  require_positive(mu_g, "mu_g");
  require_positive(l_g, "l_g");
  require_positive(l_l, "l_l");
  return (n * eps / 32.0) * std::pow(mu_g, 1.5) / (std::sqrt(l_g) * l_l * l_l);
}

double compute_delta(double delta_prime, int n, double mu_g, double l_g, double mu_l, double l_l) {
  if (delta_prime < 0.0) throw std::invalid_argument("delta_prime must be nonnegative");
  require_positive(mu_g, "mu_g");
  if (mu_l > l_l) throw std::invalid_argument("mu_l must not exceed l_l");
  return (l_l * l_l / l_g + 2.0 * l_l * l_l / mu_g + l_l - mu_l) * delta_prime / (2.0 * n);
}

long compute_outer_iterations(double eps, double l_g, double mu_g, double dist0) {
  require_positive(eps, "eps");
  require_positive(l_g, "l_g");
  require_positive(mu_g, "mu_g");
  double value = 2.0 * std::sqrt(l_g / mu_g) * std::log(2.0 * l_g * dist0 * dist0 / eps);
  if (!(value > 0.0)) return 1;
  return std::max(1L, static_cast<long>(std::ceil(value)));
}

double compute_d_bound(double delta_prime, double l, double mu, double l_l, int n, double dist0,
                       double grad_norm_star) {
  require_positive(l, "l");
  require_positive(mu, "mu");
  if (delta_prime < 0.0 || grad_norm_star < 0.0 || dist0 < 0.0)
    throw std::invalid_argument("compute_d_bound: negative input");
  double root_lmu = std::sqrt(l * mu);
  double sqrt_d = (2.0 * l_l / root_lmu + 1.0) * std::sqrt(delta_prime) +
                  (l_l / mu) * std::sqrt(static_cast<double>(n)) *
                      std::sqrt(dist0 * dist0 + 8.0 * delta_prime / root_lmu) +
                  2.0 * grad_norm_star / root_lmu;
  return sqrt_d * sqrt_d;
}

int compute_consensus_rounds(double tau, double lambda, double d_bound, double delta_prime) {
  require_positive(tau, "tau");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must be in (0, 1]");
  require_positive(delta_prime, "delta_prime");
  if (d_bound <= delta_prime) return 1;
  double value = tau / (2.0 * lambda) * std::log(d_bound / delta_prime);
  return std::max(1, static_cast<int>(std::ceil(value)));
}

double compute_d1(double mu_g, double l_g, double l_l, int n, double dist0,
                  double grad_norm_star) {
  double kappa = l_g / mu_g;
  return l_l / (std::sqrt(l_g) * mu_g) *
         (8.0 * std::sqrt(2.0) * l_l * dist0 * std::pow(kappa, 0.75) +
          4.0 * std::sqrt(2.0) * grad_norm_star * std::pow(kappa, 0.25) / std::sqrt(n));
}

double compute_d2(double mu_g, double l_g, double l_l, int n) {
  double kappa = l_g / mu_g;
  return l_l / (std::sqrt(l_g) * mu_g) *
         (3.0 * std::sqrt(mu_g) + 4.0 * std::sqrt(2.0 * n) * std::pow(kappa, 0.25));
}

void AlgoParams::validate() const {
  if (!(mu > 0.0) || l < mu) throw std::invalid_argument("AlgoParams: need L >= mu > 0");
  if (t < 1) throw std::invalid_argument("AlgoParams: need T >= 1");
  if (!(delta_prime > 0.0)) throw std::invalid_argument("AlgoParams: need delta_prime > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("AlgoParams: need epsilon > 0");
}

TheoremPlan plan_theorem(const ProblemConstants& c, int n, double tau, double lambda, double eps,
                         double dist0, double grad_norm_star) {
  TheoremPlan plan;
  plan.constants = c;
  plan.n = n;
  plan.tau = tau;
  plan.lambda = lambda;
  plan.epsilon = eps;
  plan.dist0 = dist0;
  plan.grad_norm_star = grad_norm_star;
  plan.l = oracle_smoothness(c.l_g);
  plan.mu = oracle_strong_convexity(c.mu_g);
  plan.delta_prime = compute_delta_prime(eps, n, c.mu_g, c.l_g, c.l_l);
  plan.delta = compute_delta(plan.delta_prime, n, c.mu_g, c.l_g, c.mu_l, c.l_l);
  plan.d_bound =
      compute_d_bound(plan.delta_prime, plan.l, plan.mu, c.l_l, n, dist0, grad_norm_star);
  plan.n_outer = compute_outer_iterations(eps, c.l_g, c.mu_g, dist0);
  plan.n_outer_main =
      2.0 * std::sqrt(c.l_g / c.mu_g) * std::log(dist0 * dist0 / (2.0 * eps * c.l_g));
  plan.t_rounds = compute_consensus_rounds(tau, lambda, plan.d_bound, plan.delta_prime);
  plan.d1 = compute_d1(c.mu_g, c.l_g, c.l_l, n, dist0, grad_norm_star);
  plan.d2 = compute_d2(c.mu_g, c.l_g, c.l_l, n);
  plan.n_total = static_cast<long long>(plan.n_outer) * plan.t_rounds;
  return plan;
}

}  // namespace daccgd
