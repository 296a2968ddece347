#include "daccgd/edge_set.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace daccgd {

EdgeSet::EdgeSet(int num_vertices, std::vector<std::pair<int, int>> pairs)
    : n(num_vertices), edges(std::move(pairs)) {
  if (n < 1) throw std::invalid_argument("EdgeSet: vertex count must be >= 1");
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first == e.second)
      throw std::invalid_argument("EdgeSet: self-loop at vertex " + std::to_string(e.first));
    if (e.first < 0 || e.second >= n)
      throw std::invalid_argument("EdgeSet: vertex index out of range");
    if (!seen.insert(e).second)
      throw std::invalid_argument("EdgeSet: duplicate edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ")");
  }
}

std::vector<int> EdgeSet::degrees() const {
  std::vector<int> deg(n, 0);
  for (const auto& [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

bool EdgeSet::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::find(edges.begin(), edges.end(), std::make_pair(i, j)) != edges.end();
}

bool operator==(const EdgeSet& a, const EdgeSet& b) {
  if (a.n != b.n) return false;
  auto ea = a.edges, eb = b.edges;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

bool is_connected(const EdgeSet& e) {
  if (e.n <= 1) return true;
  std::vector<std::vector<int>> adj(e.n);
  for (const auto& [i, j] : e.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> seen(e.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == e.n;
}

EdgeSet complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return EdgeSet(n, std::move(edges));
}

EdgeSet ring_graph(int n) {
  if (n < 3) throw std::invalid_argument("ring_graph: need n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return EdgeSet(n, std::move(edges));
}

EdgeSet path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return EdgeSet(n, std::move(edges));
}

EdgeSet star_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return EdgeSet(n, std::move(edges));
}

std::string to_edge_list_text(const EdgeSet& e) {
  std::ostringstream out;
  for (const auto& [i, j] : e.edges) out << i << ' ' << j << '\n';
  return out.str();
}

}  // namespace daccgd
