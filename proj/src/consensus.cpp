#include "daccgd/consensus.hpp"

#include <stdexcept>

namespace daccgd {

MixingStream::MixingStream(GraphSequence seq) : seq_(std::move(seq)) {}

const Eigen::MatrixXd& MixingStream::peek(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("MixingStream: negative step");
  std::int64_t period = seq_.period();
  if (period > 0) {
    std::int64_t phase = k % period;
    auto it = cache_.find(phase);
    if (it == cache_.end())
      it = cache_.emplace(phase, metropolis_weights(seq_.edge_set_at(phase)).w).first;
    return it->second;
  }
  scratch_ = metropolis_weights(seq_.edge_set_at(k)).w;
  return scratch_;
}

const Eigen::MatrixXd& MixingStream::next() {
  const Eigen::MatrixXd& w = peek(cursor_);
  ++cursor_;
  return w;
}

DistributedState consensus(const DistributedState& x, MixingStream& stream, int rounds,
                           ConsensusCounter& counter) {
  if (rounds < 0) throw std::invalid_argument("consensus: negative round count");
  if (x.rows() != stream.sequence().n())
    throw std::invalid_argument("consensus: state rows do not match network size");
  DistributedState out = x;
  for (int t = 0; t < rounds; ++t) out = stream.next() * out;
  counter.record(rounds);
  return out;
}

double consensus_error_sq(const DistributedState& x) {
  Eigen::RowVectorXd mean = x.colwise().mean();
  return (x.rowwise() - mean).squaredNorm();
}

}  // namespace daccgd
