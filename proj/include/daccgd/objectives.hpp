#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "daccgd/libsvm.hpp"

namespace daccgd {

// Stacked parameter matrix: row i is agent i's vector x_i^T.
using DistributedState = Eigen::MatrixXd;

inline Eigen::VectorXd row_mean(const DistributedState& x) {
  return x.colwise().mean().transpose();
}

// Projection onto the consensus subspace: every row replaced by the mean row.
inline DistributedState consensus_projection(const DistributedState& x) {
  return Eigen::VectorXd::Ones(x.rows()) * x.colwise().mean();
}

inline DistributedState replicate_rows(const Eigen::VectorXd& v, int n) {
  return Eigen::VectorXd::Ones(n) * v.transpose();
}

// One agent's cost. Two kinds:
//   quadratic-block  f(x) = 1/2 ||A x - b||^2 + ridge/2 ||x||^2
//   logistic-l2      f(x) = 1/m sum_j log(1 + exp(-b_j <a_j, x>)) + theta/2 ||x||^2
class LocalFunction {
 public:
  enum class Kind { QuadraticBlock, LogisticL2 };

  static LocalFunction quadratic(Eigen::MatrixXd a, Eigen::VectorXd b, double ridge = 0.0);
  static LocalFunction logistic(Eigen::MatrixXd rows, Eigen::VectorXd labels, double theta);

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

  // (mu_i, L_i): extreme eigenvalues of A^T A (+ridge) for quadratic blocks;
  // theta and theta + lambda_max(sum a_j a_j^T)/(4m) for logistic.
  std::pair<double, double> curvature_bounds() const;

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(data_.cols()); }
  int rows() const { return static_cast<int>(data_.rows()); }
  const Eigen::MatrixXd& data() const { return data_; }
  const Eigen::VectorXd& targets() const { return targets_; }
  double regularizer() const { return reg_; }

 private:
  LocalFunction(Kind kind, Eigen::MatrixXd data, Eigen::VectorXd targets, double reg)
      : kind_(kind), data_(std::move(data)), targets_(std::move(targets)), reg_(reg) {}

  Kind kind_;
  Eigen::MatrixXd data_;     // A (quadratic) or data rows (logistic)
  Eigen::VectorXd targets_;  // b (quadratic) or labels in {-1,+1} (logistic)
  double reg_;               // ridge / theta
};

struct ProblemConstants {
  double mu_l = 0.0;  // min_i mu_i
  double l_l = 0.0;   // max_i L_i
  double mu_g = 0.0;  // mean mu_i
  double l_g = 0.0;   // mean L_i

  double kappa_g() const { return l_g / mu_g; }
  double kappa_l() const { return l_l / mu_l; }
};

// Aggregates per-agent curvature per the local/global definitions. Throws
// "not strongly convex" if some mu_i <= 0.
ProblemConstants compute_constants(const std::vector<LocalFunction>& locals);

// The distributed objective: F(X) = sum_i f_i(x_i), f(x) = F/n on consensus.
class ProblemInstance {
 public:
  explicit ProblemInstance(std::vector<LocalFunction> locals);

  int num_agents() const { return static_cast<int>(locals_.size()); }
  int dim() const { return d_; }
  const std::vector<LocalFunction>& locals() const { return locals_; }
  const ProblemConstants& constants() const { return constants_; }

  double f(const Eigen::VectorXd& x) const;              // (1/n) sum f_i(x)
  double stacked_value(const DistributedState& x) const;  // F(X)
  DistributedState stacked_gradient(const DistributedState& x) const;
  Eigen::VectorXd average_gradient(const DistributedState& x) const;

 private:
  std::vector<LocalFunction> locals_;
  int d_;
  ProblemConstants constants_;
};

struct Minimizer {
  Eigen::VectorXd x;
  double f_value = 0.0;
};

// Reference solution: exact normal-equations solve when every local is a
// quadratic block, otherwise centralized accelerated gradient descent down to
// gradient norm <= grad_tol. Throws on non-convergence.
Minimizer minimizer_oracle(const ProblemInstance& p, double grad_tol = 1e-12,
                           std::int64_t max_iter = 1000000);

struct SyntheticQuadraticParams {
  int agents = 20;
  int dim = 10;
  double kappa_g = 100.0;   // mean(L_i) / mean(mu_i), exact by construction
  double spread = 1.0;      // >= 1; >1 spreads per-agent (mu_i, L_i) so kappa_l > kappa_g
  bool shared_rotation = true;
  double offset_scale = 1.0;  // scale of the per-agent minimizers c_i
  std::uint64_t seed = 1;
};

// Least-squares blocks f_i(x) = 1/2 ||A_i(x - c_i)||^2 with planted per-agent
// spectra log-spaced on [mu_i, L_i]; mean(mu_i) = 1 and mean(L_i) = kappa_g.
ProblemInstance make_synthetic_quadratic(const SyntheticQuadraticParams& params);

enum class PartitionScheme { Contiguous, Shuffled };

// Near-equal split of row indices (sizes differ by at most one, every row
// assigned exactly once). Throws if agents > rows.
std::vector<std::vector<int>> partition_indices(int rows, int agents, PartitionScheme scheme,
                                                std::uint64_t seed = 0);

ProblemInstance make_logistic_problem(const Dataset& data, int agents, double theta,
                                      PartitionScheme scheme, std::uint64_t seed = 0);
ProblemInstance make_least_squares_problem(const Dataset& data, int agents, double ridge,
                                           PartitionScheme scheme, std::uint64_t seed = 0);

}  // namespace daccgd
