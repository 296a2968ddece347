#pragma once

#include <cstdint>

#include "daccgd/edge_set.hpp"

namespace daccgd {

enum class GraphKind { Static, PerStepConnected, TauConnected, RandomGeometric };

// A deterministic, seedable stream of edge sets {E^k}. edge_set_at(k) is a
// pure function of (parameters, seed, k), so long runs can be replayed and
// inspected at arbitrary steps.
class GraphSequence {
 public:
  static GraphSequence static_graph(EdgeSet edges);

  // Places n points uniformly in the unit square and connects pairs within
  // `radius`. Disconnected draws are resampled (sub-seed incremented) up to
  // `max_retries` times; throws if no connected graph is found.
  static GraphSequence random_geometric(int n, double radius, std::uint64_t seed,
                                        int max_retries = 50);

  // Cyclic partition of a connected base graph: E^k holds the base edges with
  // index j such that j % tau == k % tau. Every window of tau consecutive
  // steps therefore covers the whole base graph.
  static GraphSequence tau_connected(EdgeSet base, int tau);

  // Every E^k is an independent random connected graph: a random recursive
  // tree plus extra edges with probability extra_edge_prob.
  static GraphSequence per_step_connected(int n, double extra_edge_prob, std::uint64_t seed);

  EdgeSet edge_set_at(std::int64_t k) const;

  int n() const { return n_; }
  GraphKind kind() const { return kind_; }
  int tau() const { return tau_; }
  std::uint64_t seed() const { return seed_; }
  bool is_static() const {
    return kind_ == GraphKind::Static || kind_ == GraphKind::RandomGeometric;
  }
  // Static kinds and the cyclic tau partition repeat with this period.
  int period() const { return is_static() ? 1 : (kind_ == GraphKind::TauConnected ? tau_ : 0); }

 private:
  GraphSequence() = default;

  int n_ = 0;
  GraphKind kind_ = GraphKind::Static;
  int tau_ = 1;
  std::uint64_t seed_ = 0;
  EdgeSet base_;                  // static kinds: the graph; tau kind: partitioned base
  double extra_edge_prob_ = 0.0;  // per-step kind
};

// True iff the union E^k ∪ ... ∪ E^{k+tau-1} is connected.
bool is_union_connected(const GraphSequence& seq, std::int64_t k, int tau);

}  // namespace daccgd
