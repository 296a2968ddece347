#include "daccgd/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "daccgd/rng.hpp"

namespace daccgd {
namespace {

// log(1 + exp(-z)) without overflow for large |z|
double softplus_neg(double z) {
  if (z > 0.0) return std::log1p(std::exp(-z));
  return -z + std::log1p(std::exp(z));
}

// 1 / (1 + exp(z))
double sigmoid_neg(double z) {
  if (z > 0.0) {
    double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

}  // namespace

LocalFunction LocalFunction::quadratic(Eigen::MatrixXd a, Eigen::VectorXd b, double ridge) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("quadratic block is empty");
  if (b.size() != a.rows()) throw std::invalid_argument("quadratic block: b size mismatch");
  if (ridge < 0.0) throw std::invalid_argument("ridge must be nonnegative");
  return LocalFunction(Kind::QuadraticBlock, std::move(a), std::move(b), ridge);
}

LocalFunction LocalFunction::logistic(Eigen::MatrixXd rows, Eigen::VectorXd labels, double theta) {
  if (rows.rows() == 0 || rows.cols() == 0) throw std::invalid_argument("logistic block is empty");
  if (labels.size() != rows.rows()) throw std::invalid_argument("logistic block: label size mismatch");
  for (int j = 0; j < labels.size(); ++j)
    if (labels(j) != 1.0 && labels(j) != -1.0)
      throw std::invalid_argument("logistic labels must be +1 or -1");
  if (theta < 0.0) throw std::invalid_argument("theta must be nonnegative");
  return LocalFunction(Kind::LogisticL2, std::move(rows), std::move(labels), theta);
}

double LocalFunction::value(const Eigen::VectorXd& x) const {
  if (x.size() != data_.cols()) throw std::invalid_argument("value: dimension mismatch");
  if (kind_ == Kind::QuadraticBlock) {
    double v = 0.5 * (data_ * x - targets_).squaredNorm();
    if (reg_ > 0.0) v += 0.5 * reg_ * x.squaredNorm();
    return v;
  }
  Eigen::VectorXd margins = targets_.cwiseProduct(data_ * x);
  double v = 0.0;
  for (int j = 0; j < margins.size(); ++j) v += softplus_neg(margins(j));
  return v / static_cast<double>(margins.size()) + 0.5 * reg_ * x.squaredNorm();
}

Eigen::VectorXd LocalFunction::gradient(const Eigen::VectorXd& x) const {
  if (x.size() != data_.cols()) throw std::invalid_argument("gradient: dimension mismatch");
  if (kind_ == Kind::QuadraticBlock) {
    Eigen::VectorXd g = data_.transpose() * (data_ * x - targets_);
    if (reg_ > 0.0) g += reg_ * x;
    return g;
  }
  Eigen::VectorXd margins = targets_.cwiseProduct(data_ * x);
  Eigen::VectorXd coeff(margins.size());
  for (int j = 0; j < margins.size(); ++j) coeff(j) = -targets_(j) * sigmoid_neg(margins(j));
  return data_.transpose() * coeff / static_cast<double>(margins.size()) + reg_ * x;
}

std::pair<double, double> LocalFunction::curvature_bounds() const {
  Eigen::MatrixXd gram = data_.transpose() * data_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (kind_ == Kind::QuadraticBlock) return {lo + reg_, hi + reg_};
  // logistic curvature: theta <= hessian <= theta + lambda_max(A^T A) / (4m)
  double m = static_cast<double>(data_.rows());
  return {reg_, reg_ + hi / (4.0 * m)};
}

ProblemConstants compute_constants(const std::vector<LocalFunction>& locals) {
  if (locals.empty()) throw std::invalid_argument("compute_constants: no agents");
  ProblemConstants c;
  c.mu_l = std::numeric_limits<double>::infinity();
  c.l_l = 0.0;
  double mu_sum = 0.0, l_sum = 0.0;
  for (const auto& f : locals) {
    auto [mu_i, l_i] = f.curvature_bounds();
    c.mu_l = std::min(c.mu_l, mu_i);
    c.l_l = std::max(c.l_l, l_i);
    mu_sum += mu_i;
    l_sum += l_i;
  }
  c.mu_g = mu_sum / static_cast<double>(locals.size());
  c.l_g = l_sum / static_cast<double>(locals.size());
  if (!(c.mu_l > 0.0))
    throw std::runtime_error("problem is not strongly convex (min local mu = " +
                             std::to_string(c.mu_l) + ")");
  return c;
}

ProblemInstance::ProblemInstance(std::vector<LocalFunction> locals) : locals_(std::move(locals)) {
  if (locals_.empty()) throw std::invalid_argument("ProblemInstance: no agents");
  d_ = locals_.front().dim();
  for (const auto& f : locals_)
    if (f.dim() != d_) throw std::invalid_argument("ProblemInstance: mixed dimensions");
  constants_ = compute_constants(locals_);
}

double ProblemInstance::f(const Eigen::VectorXd& x) const {
  double v = 0.0;
  for (const auto& fi : locals_) v += fi.value(x);
  return v / static_cast<double>(locals_.size());
}

double ProblemInstance::stacked_value(const DistributedState& x) const {
  if (x.rows() != num_agents() || x.cols() != d_)
    throw std::invalid_argument("stacked_value: shape mismatch");
  double v = 0.0;
  for (int i = 0; i < num_agents(); ++i) v += locals_[i].value(x.row(i).transpose());
  return v;
}

DistributedState ProblemInstance::stacked_gradient(const DistributedState& x) const {
  if (x.rows() != num_agents() || x.cols() != d_)
    throw std::invalid_argument("stacked_gradient: shape mismatch");
  DistributedState g(num_agents(), d_);
  for (int i = 0; i < num_agents(); ++i)
    g.row(i) = locals_[i].gradient(x.row(i).transpose()).transpose();
  return g;
}

Eigen::VectorXd ProblemInstance::average_gradient(const DistributedState& x) const {
  return stacked_gradient(x).colwise().mean().transpose();
}

Minimizer minimizer_oracle(const ProblemInstance& p, double grad_tol, std::int64_t max_iter) {
  bool all_quadratic = true;
  for (const auto& f : p.locals())
    if (f.kind() != LocalFunction::Kind::QuadraticBlock) all_quadratic = false;

  Minimizer out;
  if (all_quadratic) {
    int d = p.dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d);
    for (const auto& f : p.locals()) {
      h += f.data().transpose() * f.data();
      h.diagonal().array() += f.regularizer();
      rhs += f.data().transpose() * f.targets();
    }
    out.x = Eigen::LDLT<Eigen::MatrixXd>(h).solve(rhs);
  } else {
    // centralized Nesterov AGD on f with the averaged curvature bounds
    const auto& c = p.constants();
    double l = c.l_g, mu = c.mu_g;
    double beta = (std::sqrt(l) - std::sqrt(mu)) / (std::sqrt(l) + std::sqrt(mu));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(p.dim());
    Eigen::VectorXd y = x;
    bool converged = false;
    for (std::int64_t k = 0; k < max_iter; ++k) {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(p.dim());
      for (const auto& f : p.locals()) g += f.gradient(y);
      g /= static_cast<double>(p.num_agents());
      if (g.norm() <= grad_tol) {
        x = y;
        converged = true;
        break;
      }
      Eigen::VectorXd x_next = y - g / l;
      y = x_next + beta * (x_next - x);
      x = x_next;
    }
    if (!converged) {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(p.dim());
      for (const auto& f : p.locals()) g += f.gradient(x);
      g /= static_cast<double>(p.num_agents());
      if (g.norm() > grad_tol)
        throw std::runtime_error("minimizer_oracle: AGD did not reach gradient tolerance " +
                                 std::to_string(grad_tol));
    }
    out.x = x;
  }
  out.f_value = p.f(out.x);
  return out;
}

namespace {

Eigen::MatrixXd random_rotation(int d, Rng& rng) {
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);  // fix signs so Q is unique
  return q;
}

}  // namespace

ProblemInstance make_synthetic_quadratic(const SyntheticQuadraticParams& params) {
  const int n = params.agents, d = params.dim;
  if (n < 1) throw std::invalid_argument("synthetic: agents must be >= 1");
  if (d < 2) throw std::invalid_argument("synthetic: dim must be >= 2");
  if (params.kappa_g < 1.0) throw std::invalid_argument("synthetic: kappa_g must be >= 1");
  if (params.spread < 1.0) throw std::invalid_argument("synthetic: spread must be >= 1");

  // per-agent extreme eigenvalues, log-spaced over the spread and rescaled so
  // the means are exactly (1, kappa_g)
  Eigen::VectorXd mu(n), l(n);
  for (int i = 0; i < n; ++i) {
    double t = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
    mu(i) = std::pow(params.spread, 2.0 * t - 1.0);
    l(i) = params.kappa_g * std::pow(params.spread, 1.0 - 2.0 * t);
  }
  mu *= static_cast<double>(n) / mu.sum();
  l *= params.kappa_g * static_cast<double>(n) / l.sum();

  Rng rot_rng(stream_seed(params.seed, 0));
  Rng off_rng(stream_seed(params.seed, 1));
  Eigen::MatrixXd shared_q;
  if (params.shared_rotation) shared_q = random_rotation(d, rot_rng);

  std::vector<LocalFunction> locals;
  locals.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd spec(d);
    for (int j = 0; j < d; ++j)
      spec(j) = mu(i) * std::pow(l(i) / mu(i), static_cast<double>(j) / (d - 1));
    Eigen::MatrixXd q = params.shared_rotation ? shared_q : random_rotation(d, rot_rng);
    Eigen::MatrixXd a = spec.cwiseSqrt().asDiagonal() * q.transpose();
    Eigen::VectorXd c(d);
    for (int j = 0; j < d; ++j) c(j) = params.offset_scale * off_rng.normal();
    locals.push_back(LocalFunction::quadratic(a, a * c));
  }
  return ProblemInstance(std::move(locals));
}

std::vector<std::vector<int>> partition_indices(int rows, int agents, PartitionScheme scheme,
                                                std::uint64_t seed) {
  if (agents < 1) throw std::invalid_argument("partition: agents must be >= 1");
  if (rows < agents)
    throw std::invalid_argument("partition: need at least one row per agent (rows=" +
                                std::to_string(rows) + ", agents=" + std::to_string(agents) + ")");
  std::vector<int> order(rows);
  std::iota(order.begin(), order.end(), 0);
  if (scheme == PartitionScheme::Shuffled) {
    Rng rng(stream_seed(seed, 0));
    for (int i = rows - 1; i > 0; --i)
      std::swap(order[i], order[rng.integer(static_cast<std::uint64_t>(i) + 1)]);
  }
  std::vector<std::vector<int>> groups(agents);
  int base = rows / agents, extra = rows % agents;
  int pos = 0;
  for (int g = 0; g < agents; ++g) {
    int size = base + (g < extra ? 1 : 0);
    groups[g].assign(order.begin() + pos, order.begin() + pos + size);
    std::sort(groups[g].begin(), groups[g].end());
    pos += size;
  }
  return groups;
}

namespace {

std::vector<LocalFunction> split_dataset(const Dataset& data, int agents, double reg,
                                         PartitionScheme scheme, std::uint64_t seed,
                                         bool logistic) {
  auto groups = partition_indices(data.rows(), agents, scheme, seed);
  std::vector<LocalFunction> locals;
  locals.reserve(agents);
  for (const auto& g : groups) {
    Eigen::MatrixXd a(static_cast<int>(g.size()), data.dim());
    Eigen::VectorXd b(static_cast<int>(g.size()));
    for (int r = 0; r < static_cast<int>(g.size()); ++r) {
      a.row(r) = data.features.row(g[r]);
      b(r) = data.labels(g[r]);
    }
    locals.push_back(logistic ? LocalFunction::logistic(std::move(a), std::move(b), reg)
                              : LocalFunction::quadratic(std::move(a), std::move(b), reg));
  }
  return locals;
}

}  // namespace

ProblemInstance make_logistic_problem(const Dataset& data, int agents, double theta,
                                      PartitionScheme scheme, std::uint64_t seed) {
  if (theta <= 0.0)
    throw std::invalid_argument("logistic problem needs theta > 0 for strong convexity");
  return ProblemInstance(split_dataset(data, agents, theta, scheme, seed, true));
}

ProblemInstance make_least_squares_problem(const Dataset& data, int agents, double ridge,
                                           PartitionScheme scheme, std::uint64_t seed) {
  return ProblemInstance(split_dataset(data, agents, ridge, scheme, seed, false));
}

}  // namespace daccgd
