#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "daccgd/graph_sequence.hpp"
#include "daccgd/mixing.hpp"
#include "daccgd/objectives.hpp"

namespace daccgd {

// Communication bookkeeping: one round = one multiplication by a mixing
// matrix (one message exchange per edge).
struct ConsensusCounter {
  std::int64_t rounds_total = 0;
  std::vector<int> per_call;

  void record(int rounds) {
    rounds_total += rounds;
    per_call.push_back(rounds);
  }
};

// Hands out metropolis matrices for the time-varying sequence in order,
// keeping a global cursor so consecutive consensus calls keep advancing
// through the sequence. Periodic sequences are cached by phase.
class MixingStream {
 public:
  explicit MixingStream(GraphSequence seq);

  const Eigen::MatrixXd& next();           // matrix for step `cursor`, then ++cursor
  const Eigen::MatrixXd& peek(std::int64_t k);  // matrix for an arbitrary step
  std::int64_t cursor() const { return cursor_; }
  void reset(std::int64_t k = 0) { cursor_ = k; }
  const GraphSequence& sequence() const { return seq_; }

 private:
  GraphSequence seq_;
  std::int64_t cursor_ = 0;
  std::unordered_map<std::int64_t, Eigen::MatrixXd> cache_;
  Eigen::MatrixXd scratch_;  // holds non-cacheable matrices
};

// T rounds of gossip: X <- W^{k+T-1} ... W^{k+1} W^k X, advancing the stream
// cursor by T and counter.comm_rounds by T.
DistributedState consensus(const DistributedState& x, MixingStream& stream, int rounds,
                           ConsensusCounter& counter);

// sum_i ||x_i - mean||^2
double consensus_error_sq(const DistributedState& x);

}  // namespace daccgd
