#pragma once

#include <string>
#include <utility>
#include <vector>

namespace daccgd {

// Undirected edge set on vertices 0..n-1. Pairs are stored normalized
// (first < second) but keep their construction order; the time-varying
// generators rely on that order when slicing edges into groups.
struct EdgeSet {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  EdgeSet() = default;
  EdgeSet(int num_vertices, std::vector<std::pair<int, int>> pairs);

  std::vector<int> degrees() const;
  bool has_edge(int i, int j) const;
};

bool operator==(const EdgeSet& a, const EdgeSet& b);  // order-insensitive

// BFS connectivity. A single vertex (or empty graph with n==1) is connected.
bool is_connected(const EdgeSet& e);

EdgeSet complete_graph(int n);
EdgeSet ring_graph(int n);   // edges in ring order (0,1),(1,2),...,(n-1,0)
EdgeSet path_graph(int n);
EdgeSet star_graph(int n);   // center 0

// One "i j" pair per line.
std::string to_edge_list_text(const EdgeSet& e);

}  // namespace daccgd
