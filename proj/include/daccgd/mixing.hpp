#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "daccgd/graph_sequence.hpp"

namespace daccgd {

// One doubly stochastic gossip matrix tied to the edge set it was built from.
struct MixingMatrix {
  Eigen::MatrixXd w;
  EdgeSet source_edges;

  int n() const { return static_cast<int>(w.rows()); }
};

// Metropolis weights: w_ij = 1/(1 + max(d_i, d_j)) on edges, zero off edges,
// diagonal fills the row to 1. Symmetric and doubly stochastic by construction;
// an empty edge set yields the identity.
MixingMatrix metropolis_weights(const EdgeSet& e);

struct MixingReport {
  bool decentralized_ok = false;  // off-edge entries exactly zero
  bool row_sums_ok = false;
  bool col_sums_ok = false;
  bool nonnegative_ok = false;
  double max_row_deviation = 0.0;
  double max_col_deviation = 0.0;
  double max_off_edge_abs = 0.0;
  double min_entry = 0.0;

  bool pass() const { return decentralized_ok && row_sums_ok && col_sums_ok && nonnegative_ok; }
  std::string summary() const;
};

MixingReport verify_mixing(const MixingMatrix& m, double tol);

// 1 - sigma_2(W), computed as 1 - sigma_max(W - (1/n)11^T).
double contraction_factor_static(const MixingMatrix& m);

// Largest singular value (dense SVD; desk-scale n).
double spectral_norm(const Eigen::MatrixXd& m);

// W_tau^k = W^k ... W^{k-tau+1} of Metropolis matrices of the sequence.
Eigen::MatrixXd window_product(const GraphSequence& seq, std::int64_t k, int tau);

struct ContractionEstimate {
  int tau = 1;
  double lambda = 0.0;  // contraction factor, (0, 1]
  double chi = 0.0;     // tau / lambda
};

// lambda = 1 - max_{tau-1 <= k < horizon} sigma_max(W_tau^k - (1/n)11^T), a
// finite-horizon surrogate for the Assumption-style supremum. Throws if the
// measured lambda is <= 1e-12 (sequence not contracting at this window; the
// floor absorbs SVD rounding when sigma is exactly 1 in real arithmetic).
ContractionEstimate estimate_contraction(const GraphSequence& seq, int tau, int horizon = 200);

// Row-per-line CSV dump for inspection.
std::string to_csv(const Eigen::MatrixXd& m);

}  // namespace daccgd
