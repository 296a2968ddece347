#include "daccgd/mixing.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace daccgd {

MixingMatrix metropolis_weights(const EdgeSet& e) {
  const int n = e.n;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const std::vector<int> deg = e.degrees();
  for (const auto& [i, j] : e.edges) {
    const double wij = 1.0 / (1.0 + std::max(deg[i], deg[j]));
    w(i, j) = wij;
    w(j, i) = wij;
  }
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - (w.row(i).sum() - w(i, i));
  return MixingMatrix{std::move(w), e};
}

std::string MixingReport::summary() const {
  std::ostringstream out;
  out << (pass() ? "pass" : "FAIL")
      << " decentralized=" << (decentralized_ok ? "ok" : "fail")
      << " rows=" << (row_sums_ok ? "ok" : "fail") << " (dev " << max_row_deviation << ")"
      << " cols=" << (col_sums_ok ? "ok" : "fail") << " (dev " << max_col_deviation << ")"
      << " nonneg=" << (nonnegative_ok ? "ok" : "fail") << " (min " << min_entry << ")";
  return out.str();
}

MixingReport verify_mixing(const MixingMatrix& m, double tol) {
  MixingReport r;
  const int n = m.n();
  r.max_off_edge_abs = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !m.source_edges.has_edge(i, j))
        r.max_off_edge_abs = std::max(r.max_off_edge_abs, std::abs(m.w(i, j)));
  r.decentralized_ok = r.max_off_edge_abs == 0.0;
  r.max_row_deviation = (m.w.rowwise().sum().array() - 1.0).abs().maxCoeff();
  r.max_col_deviation = (m.w.colwise().sum().array() - 1.0).abs().maxCoeff();
  r.row_sums_ok = r.max_row_deviation <= tol;
  r.col_sums_ok = r.max_col_deviation <= tol;
  r.min_entry = m.w.minCoeff();
  r.nonnegative_ok = r.min_entry >= 0.0;
  return r;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double contraction_factor_static(const MixingMatrix& m) {
  const int n = m.n();
  if (n == 0) throw std::invalid_argument("contraction_factor_static: empty matrix");
  const Eigen::MatrixXd avg = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  return 1.0 - spectral_norm(m.w - avg);
}

Eigen::MatrixXd window_product(const GraphSequence& seq, std::int64_t k, int tau) {
  if (tau < 1 || k < tau - 1)
    throw std::invalid_argument("window_product: need tau >= 1 and k >= tau-1");
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(seq.n(), seq.n());
  for (std::int64_t t = k - tau + 1; t <= k; ++t)
    p = metropolis_weights(seq.edge_set_at(t)).w * p;
  return p;
}

ContractionEstimate estimate_contraction(const GraphSequence& seq, int tau, int horizon) {
  if (tau < 1) throw std::invalid_argument("estimate_contraction: tau must be >= 1");
  if (horizon < tau) throw std::invalid_argument("estimate_contraction: horizon must be >= tau");
  const int n = seq.n();
  const Eigen::MatrixXd avg = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  // Periodic sequences (static kinds, cyclic tau partitions) repeat their
  // window products, so the horizon collapses to one period.
  std::int64_t last = horizon - 1;
  if (seq.period() > 0) last = std::min<std::int64_t>(last, tau - 1 + seq.period() - 1);
  double sigma = 0.0;
  for (std::int64_t k = tau - 1; k <= last; ++k)
    sigma = std::max(sigma, spectral_norm(window_product(seq, k, tau) - avg));
  const double lambda = 1.0 - sigma;
  // A window that only permutes mass (e.g. disconnected matchings) has
  // sigma exactly 1, but the SVD can land an ulp below; treat anything
  // within rounding noise of zero as non-contracting.
  if (lambda <= 1e-12)
    throw std::runtime_error("sequence not contracting at window tau=" + std::to_string(tau));
  return ContractionEstimate{tau, lambda, tau / lambda};
}

std::string to_csv(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace daccgd
