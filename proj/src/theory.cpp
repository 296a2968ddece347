#include "daccgd/theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "daccgd/coefficients.hpp"
#include "daccgd/consensus.hpp"
#include "daccgd/params.hpp"
#include "daccgd/rng.hpp"

namespace daccgd {
namespace {

constexpr double kSlackTol = 1e-9;

char* fmt(char* buf, std::size_t n, double v) {
  std::snprintf(buf, n, "%.6g", v);
  return buf;
}

}  // namespace

std::string CheckReport::summary() const {
  char buf[64];
  std::string s = name + ": " + (pass ? "PASS" : "FAIL");
  s += " worst_slack=";
  s += fmt(buf, sizeof(buf), worst_slack);
  s += " checks=" + std::to_string(checks) + " violations=" + std::to_string(violations);
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::string out = "check,pass,worst_slack,checks,violations\n";
  char buf[64];
  for (const auto& r : reports) {
    out += r.name;
    out += r.pass ? ",1," : ",0,";
    std::snprintf(buf, sizeof(buf), "%.17g", r.worst_slack);
    out += buf;
    out += "," + std::to_string(r.checks) + "," + std::to_string(r.violations) + "\n";
  }
  return out;
}

void write_reports(const std::vector<CheckReport>& reports, const std::string& text_path,
                   const std::string& csv_path) {
  std::ofstream text(text_path, std::ios::binary);
  if (!text) throw std::runtime_error("cannot write report file: " + text_path);
  for (const auto& r : reports) text << r.summary() << "\n";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write report file: " + csv_path);
  csv << reports_to_csv(reports);
}

OracleModelValue oracle_model(const ProblemInstance& p, const DistributedState& x_state) {
  const auto& c = p.constants();
  const int n = p.num_agents();
  DistributedState xbar = consensus_projection(x_state);
  DistributedState diff = xbar - x_state;

  OracleModelValue out;
  out.delta_prime = consensus_error_sq(x_state);
  out.delta = compute_delta(out.delta_prime, n, c.mu_g, c.l_g, c.mu_l, c.l_l);
  DistributedState grad = p.stacked_gradient(x_state);
  double quad_coef = 0.5 * (c.mu_l - 2.0 * c.l_l * c.l_l / c.mu_g);
  out.f_model = (p.stacked_value(x_state) + grad.cwiseProduct(diff).sum() +
                 quad_coef * diff.squaredNorm()) /
                static_cast<double>(n);
  out.g_model = grad.colwise().mean().transpose();
  return out;
}

CheckReport check_model_inequality(const ProblemInstance& p, const DistributedState& x_state,
                                   const std::vector<Eigen::VectorXd>& y_points) {
  const auto& c = p.constants();
  OracleModelValue model = oracle_model(p, x_state);
  Eigen::VectorXd x_mean = row_mean(x_state);

  CheckReport report;
  report.name = "lemma1_model_inequality";
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& y : y_points) {
    double dist_sq = (y - x_mean).squaredNorm();
    double middle = p.f(y) - model.f_model - model.g_model.dot(y - x_mean);
    double lower_slack = middle - 0.25 * c.mu_g * dist_sq;
    double upper_slack = c.l_g * dist_sq + model.delta - middle;
    report.worst_slack = std::min({report.worst_slack, lower_slack, upper_slack});
    report.checks += 2;
    if (lower_slack < -kSlackTol) ++report.violations;
    if (upper_slack < -kSlackTol) ++report.violations;
  }
  report.pass = report.violations == 0 && report.checks > 0;
  return report;
}

std::vector<Eigen::VectorXd> sample_test_points(const Eigen::VectorXd& x_mean,
                                                const Eigen::VectorXd& x_star, int count,
                                                std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample_test_points: negative count");
  const int d = static_cast<int>(x_mean.size());
  double radius = 10.0 * (x_mean - x_star).norm();
  if (radius == 0.0) radius = 1.0;

  Rng rng(stream_seed(seed, 0));
  std::vector<Eigen::VectorXd> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd dir(d);
    for (int j = 0; j < d; ++j) dir(j) = rng.normal();
    double norm = dir.norm();
    if (norm == 0.0) {
      dir.setZero();
      dir(0) = 1.0;
      norm = 1.0;
    }
    double r = radius * std::pow(rng.uniform(), 1.0 / d);
    points.push_back(x_mean + (r / norm) * dir);
  }
  return points;
}

CheckReport check_lemma2_properties(double l, double mu, long max_k) {
  if (!(l > 0.0) || !(mu > 0.0) || l < mu)
    throw std::invalid_argument("check_lemma2_properties: need L >= mu > 0");

  CheckReport report;
  report.name = "lemma2_coefficient_properties";
  report.worst_slack = std::numeric_limits<double>::infinity();

  const long double ll = l, lmu = mu;
  const long double growth = 1.0L + 0.5L * std::sqrt(lmu / ll);
  const long double sum_cap = 1.0L + std::sqrt(ll / lmu);
  long double a = 0.0L, sum_a = 0.0L;
  for (long k = 1; k <= max_k; ++k) {
    auto step = next_alpha_a<long double>(a, ll, lmu);
    a = step.a;
    sum_a += a;

    // property 1 in log space, as relative slack of A^k over the bound
    long double log_bound = -std::log(ll) + 2.0L * (k - 1) * std::log(growth);
    long double rel1 = std::expm1l(std::log(a) - log_bound);
    // property 2: sum A^i / A^k <= 1 + sqrt(L/mu)
    long double ratio = sum_a / a;
    long double rel2 = (sum_cap - ratio) / sum_cap;

    double s1 = static_cast<double>(std::min<long double>(rel1, 1e300));
    double s2 = static_cast<double>(rel2);
    report.worst_slack = std::min({report.worst_slack, s1, s2});
    report.checks += 2;
    if (s1 < -kSlackTol) ++report.violations;
    if (s2 < -kSlackTol) ++report.violations;
  }
  report.pass = report.violations == 0 && report.checks > 0;
  return report;
}

CheckReport check_lemma3_bound(const RunTrace& trace, double delta, double mu) {
  CheckReport report;
  report.name = "lemma3_convergence_bound";
  report.worst_slack = std::numeric_limits<double>::infinity();
  if (trace.rows.empty()) throw std::invalid_argument("check_lemma3_bound: empty trace");

  double dist0_sq = (trace.rows.front().u_mean - trace.x_star).squaredNorm();
  for (const auto& row : trace.rows) {
    if (row.iter == 0) continue;  // A^0 = 0: bound degenerate
    double f_bound = dist0_sq / (2.0 * row.a_big) + 2.0 * row.sum_a * delta / row.a_big;
    double f_slack = (f_bound - row.f_gap) / std::max(1.0, std::abs(f_bound));
    double u_dist_sq = (row.u_mean - trace.x_star).squaredNorm();
    double u_bound = (dist0_sq + 4.0 * row.sum_a * delta) / (1.0 + row.a_big * mu);
    double u_slack = (u_bound - u_dist_sq) / std::max(1.0, std::abs(u_bound));
    report.worst_slack = std::min({report.worst_slack, f_slack, u_slack});
    report.checks += 2;
    if (f_slack < -kSlackTol) ++report.violations;
    if (u_slack < -kSlackTol) ++report.violations;
  }
  report.pass = report.violations == 0 && report.checks > 0;
  return report;
}

CheckReport check_lemma4_sufficiency(const RunTrace& trace, double delta_prime, double d_bound) {
  CheckReport report;
  report.name = "lemma4_consensus_maintenance";
  report.worst_slack = std::numeric_limits<double>::infinity();
  if (!(delta_prime > 0.0) || !(d_bound > 0.0))
    throw std::invalid_argument("check_lemma4_sufficiency: need delta_prime, D > 0");

  long u_viol = 0, v_viol = 0;
  for (const auto& row : trace.rows) {
    if (row.iter == 0) continue;
    double u_slack = (delta_prime - row.u_err_sq) / delta_prime;
    double v_slack = (d_bound - row.v_err_sq) / d_bound;
    report.worst_slack = std::min({report.worst_slack, u_slack, v_slack});
    report.checks += 2;
    if (u_slack < -kSlackTol) {
      ++report.violations;
      ++u_viol;
    }
    if (v_slack < -kSlackTol) {
      ++report.violations;
      ++v_viol;
    }
  }
  report.pass = report.violations == 0 && report.checks > 0;
  report.detail = "u_violations=" + std::to_string(u_viol) +
                  " v_violations=" + std::to_string(v_viol);
  return report;
}

}  // namespace daccgd
