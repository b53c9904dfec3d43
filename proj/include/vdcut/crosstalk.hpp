#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vdcut/coupling_map.hpp"
#include "vdcut/dag.hpp"

namespace vdcut {

/// Lowest-index coupled pair (a from g1, b from g2), if any.
inline std::optional<std::pair<int, int>> adjacent_cross_pair(const Gate& g1, const Gate& g2, const CouplingMap& map) {
  std::optional<std::pair<int, int>> best;
  for (int i = 0; i < g1.arity(); ++i)
    for (int j = 0; j < g2.arity(); ++j) {
      int a = g1.qubit(i), b = g2.qubit(j);
      if (a == b || !map.is_edge(a, b)) continue;
      if (a > b) std::swap(a, b);
      if (!best || std::make_pair(a, b) < *best) best = std::make_pair(a, b);
    }
  return best;
}

/// Adds RZZ(angle) after every DAG layer for each pair of simultaneous CNOT/SWAP
/// gates that sit on coupled qubits. Output ops are emitted layer by layer.
inline Circuit insert_zz_crosstalk(const Circuit& c, const CouplingMap& map, double angle = -kPi / 3.5) {
  require(c.width() <= map.size(), "circuit wider than coupling map");
  Circuit out(c.width(), c.name());
  for (const auto& layer : layers_of(c)) {
    std::vector<std::size_t> ent;
    for (std::size_t i : layer) {
      out.push(c[i]);
      if (c[i].kind() == GateKind::CNOT || c[i].kind() == GateKind::SWAP) ent.push_back(i);
    }
    for (std::size_t x = 0; x < ent.size(); ++x)
      for (std::size_t y = x + 1; y < ent.size(); ++y)
        if (auto p = adjacent_cross_pair(c[ent[x]], c[ent[y]], map))
          out.push(Gate::rzz(p->first, p->second, angle, std::string(tags::kCrosstalk)));
  }
  return out;
}

}  // namespace vdcut
