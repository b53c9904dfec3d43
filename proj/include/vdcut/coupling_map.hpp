#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vdcut/error.hpp"

namespace vdcut {

/// Undirected, connected qubit connectivity graph with all-pairs hop distances.
class CouplingMap {
 public:
  CouplingMap() = default;
  CouplingMap(int n, std::vector<std::pair<int, int>> edges, std::string kind)
      : n_(n), kind_(std::move(kind)), adj_(static_cast<std::size_t>(n)) {
    require(n >= 1, "coupling map needs at least one qubit");
    for (auto [a, b] : edges) {
      require(a >= 0 && b >= 0 && a < n && b < n, "coupling edge references an invalid qubit");
      require(a != b, "coupling edge is a self-loop");
      if (a > b) std::swap(a, b);
      if (std::find(edges_.begin(), edges_.end(), std::make_pair(a, b)) != edges_.end()) continue;
      edges_.emplace_back(a, b);
      adj_[static_cast<std::size_t>(a)].push_back(b);
      adj_[static_cast<std::size_t>(b)].push_back(a);
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& v : adj_) std::sort(v.begin(), v.end());
    compute_distances();
    for (int q = 0; q < n_; ++q) require(dist(0, q) < kUnreachable, "coupling map must be connected");
  }

  static CouplingMap fully_connected(int n) {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
    return CouplingMap(n, std::move(e), "fully-connected");
  }

  static CouplingMap linear(int n) {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
    return CouplingMap(n, std::move(e), "linear");
  }

  /// Heavy-hex lattice with d rows of 2d+1 qubits joined by bridge qubits; d=7
  /// gives the 127-qubit layout.
  static CouplingMap heavy_hex(int d) {
    require(d >= 3 && d % 2 == 1, "heavy-hex distance must be odd and >= 3");
    const int len = 2 * d + 1;
    std::vector<std::vector<int>> row_id(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(len), -1));
    std::vector<std::pair<int, int>> e;
    std::vector<std::tuple<int, int, int>> bridges;  // (row above, column, bridge id)
    int next = 0;
    for (int r = 0; r < d; ++r) {
      int prev = -1;
      for (int c = 0; c < len; ++c) {
        if ((r == 0 && c == len - 1) || (r == d - 1 && c == 0)) continue;
        const int id = next++;
        row_id[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = id;
        if (prev >= 0) e.emplace_back(prev, id);
        prev = id;
      }
      if (r + 1 == d) break;
      for (int c = (r % 2 == 0) ? 0 : 2; c < len; c += 4) {
        const int bridge = next++;
        e.emplace_back(row_id[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], bridge);
        bridges.emplace_back(r, c, bridge);
      }
    }
    for (auto [r, c, bridge] : bridges)
      e.emplace_back(bridge, row_id[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(c)]);
    return CouplingMap(next, std::move(e), "heavy-hex(" + std::to_string(d) + ")");
  }

  static CouplingMap custom(int n, std::vector<std::pair<int, int>> edges) { return CouplingMap(n, std::move(edges), "custom"); }

  /// "full", "linear", "heavyhex:d" (the first two sized to `n`), or "file:path" with
  /// one "a b" edge per line.
  static CouplingMap from_spec(const std::string& spec, int n) {
    if (spec == "full" || spec == "fully-connected") return fully_connected(n);
    if (spec == "linear") return linear(n);
    if (spec.rfind("heavyhex:", 0) == 0) return heavy_hex(std::stoi(spec.substr(9)));
    if (spec == "heavyhex") return heavy_hex(3);
    if (spec.rfind("file:", 0) == 0) {
      std::ifstream f(spec.substr(5));
      require(f.good(), "cannot open coupling map file " + spec.substr(5));
      std::vector<std::pair<int, int>> edges;
      int size = 0;
      std::string line;
      while (std::getline(f, line)) {
        std::istringstream ls(line.substr(0, line.find('#')));
        int a = 0, b = 0;
        if (!(ls >> a >> b)) continue;
        edges.emplace_back(a, b);
        size = std::max(size, std::max(a, b) + 1);
      }
      return custom(size, std::move(edges));
    }
    throw Error("unknown coupling map spec '" + spec + "'");
  }

  int size() const { return n_; }
  const std::string& kind() const { return kind_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int q) const { return adj_.at(static_cast<std::size_t>(q)); }
  bool is_edge(int a, int b) const { return dist(a, b) == 1; }
  int dist(int a, int b) const { return dist_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)]; }
  bool is_full() const { return static_cast<long>(edges_.size()) == static_cast<long>(n_) * (n_ - 1) / 2; }

  int max_degree_qubit() const {
    int best = 0;
    for (int q = 1; q < n_; ++q)
      if (adj_[static_cast<std::size_t>(q)].size() > adj_[static_cast<std::size_t>(best)].size()) best = q;
    return best;
  }

  /// Breadth-first visiting order from `root`, neighbors in ascending order.
  std::vector<int> bfs_order(int root) const {
    std::vector<int> order;
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::deque<int> todo{root};
    seen[static_cast<std::size_t>(root)] = true;
    while (!todo.empty()) {
      const int q = todo.front();
      todo.pop_front();
      order.push_back(q);
      for (int nb : adj_[static_cast<std::size_t>(q)])
        if (!seen[static_cast<std::size_t>(nb)]) {
          seen[static_cast<std::size_t>(nb)] = true;
          todo.push_back(nb);
        }
    }
    return order;
  }

  /// Induced subgraph on `qubits`; new index i corresponds to qubits[i].
  CouplingMap induced(const std::vector<int>& qubits) const {
    std::vector<int> pos(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < qubits.size(); ++i) pos[static_cast<std::size_t>(qubits[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : edges_)
      if (pos[static_cast<std::size_t>(a)] >= 0 && pos[static_cast<std::size_t>(b)] >= 0)
        e.emplace_back(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
    return CouplingMap(static_cast<int>(qubits.size()), std::move(e), kind_ + "/region");
  }

  static constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

 private:
  void compute_distances() {
    dist_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), kUnreachable);
    for (int s = 0; s < n_; ++s) {
      auto row = dist_.begin() + static_cast<long>(s) * n_;
      row[s] = 0;
      std::deque<int> todo{s};
      while (!todo.empty()) {
        const int q = todo.front();
        todo.pop_front();
        for (int nb : adj_[static_cast<std::size_t>(q)])
          if (row[nb] == kUnreachable) {
            row[nb] = row[q] + 1;
            todo.push_back(nb);
          }
      }
    }
  }

  int n_ = 0;
  std::string kind_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> dist_;
};

}  // namespace vdcut
