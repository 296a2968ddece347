#include "daccgd/graph_sequence.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "daccgd/rng.hpp"

namespace daccgd {

GraphSequence GraphSequence::static_graph(EdgeSet edges) {
  GraphSequence seq;
  seq.n_ = edges.n;
  seq.kind_ = GraphKind::Static;
  seq.base_ = std::move(edges);
  return seq;
}

GraphSequence GraphSequence::random_geometric(int n, double radius, std::uint64_t seed,
                                              int max_retries) {
  if (n < 1) throw std::invalid_argument("random_geometric: n must be >= 1");
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = rng.uniform();
      ys[i] = rng.uniform();
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::hypot(xs[i] - xs[j], ys[i] - ys[j]) <= radius) edges.emplace_back(i, j);
    EdgeSet e(n, std::move(edges));
    if (is_connected(e)) {
      GraphSequence seq;
      seq.n_ = n;
      seq.kind_ = GraphKind::RandomGeometric;
      seq.seed_ = seed;
      seq.base_ = std::move(e);
      return seq;
    }
  }
  throw std::runtime_error("could not generate connected geometric graph (n=" +
                           std::to_string(n) + ", radius=" + std::to_string(radius) + ")");
}

GraphSequence GraphSequence::tau_connected(EdgeSet base, int tau) {
  if (tau < 1) throw std::invalid_argument("tau_connected: tau must be >= 1");
  if (!is_connected(base)) throw std::invalid_argument("tau_connected: base graph must be connected");
  GraphSequence seq;
  seq.n_ = base.n;
  seq.kind_ = GraphKind::TauConnected;
  seq.tau_ = tau;
  seq.base_ = std::move(base);
  return seq;
}

GraphSequence GraphSequence::per_step_connected(int n, double extra_edge_prob,
                                                std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("per_step_connected: n must be >= 1");
  if (extra_edge_prob < 0.0 || extra_edge_prob > 1.0)
    throw std::invalid_argument("per_step_connected: extra_edge_prob must be in [0,1]");
  GraphSequence seq;
  seq.n_ = n;
  seq.kind_ = GraphKind::PerStepConnected;
  seq.seed_ = seed;
  seq.extra_edge_prob_ = extra_edge_prob;
  return seq;
}

EdgeSet GraphSequence::edge_set_at(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("edge_set_at: step index must be >= 0");
  switch (kind_) {
    case GraphKind::Static:
    case GraphKind::RandomGeometric:
      return base_;
    case GraphKind::TauConnected: {
      std::vector<std::pair<int, int>> group;
      const int residue = static_cast<int>(k % tau_);
      for (std::size_t j = residue; j < base_.edges.size(); j += tau_)
        group.push_back(base_.edges[j]);
      return EdgeSet(n_, std::move(group));
    }
    case GraphKind::PerStepConnected: {
      Rng rng(stream_seed(seed_, static_cast<std::uint64_t>(k)));
      // random recursive tree on a random vertex permutation, then extras
      std::vector<int> perm(n_);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = n_ - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.integer(static_cast<std::uint64_t>(i) + 1)]);
      std::vector<std::pair<int, int>> edges;
      std::set<std::pair<int, int>> used;
      for (int i = 1; i < n_; ++i) {
        int a = perm[i];
        int b = perm[rng.integer(static_cast<std::uint64_t>(i))];
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
        used.insert({a, b});
      }
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
          if (!used.count({i, j}) && rng.uniform() < extra_edge_prob_) edges.emplace_back(i, j);
      return EdgeSet(n_, std::move(edges));
    }
  }
  throw std::logic_error("edge_set_at: unreachable");
}

bool is_union_connected(const GraphSequence& seq, std::int64_t k, int tau) {
  if (k < 0 || tau < 1) throw std::invalid_argument("is_union_connected: need k >= 0, tau >= 1");
  std::set<std::pair<int, int>> all;
  for (int t = 0; t < tau; ++t) {
    const EdgeSet e = seq.edge_set_at(k + t);
    all.insert(e.edges.begin(), e.edges.end());
  }
  return is_connected(EdgeSet(seq.n(), {all.begin(), all.end()}));
}

}  // namespace daccgd
