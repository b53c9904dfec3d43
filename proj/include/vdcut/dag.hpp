#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "vdcut/circuit.hpp"

namespace vdcut {

/// Gate dependency graph. Node i is circuit op i; an edge u -> v exists when v is
/// the next op after u on some shared qubit.
struct Dag {
  std::vector<std::vector<std::size_t>> preds;
  std::vector<std::vector<std::size_t>> succs;
  std::vector<std::size_t> layer;  // earliest layer after all predecessors
  std::size_t depth = 0;

  std::size_t size() const { return layer.size(); }
  bool has_edge(std::size_t u, std::size_t v) const {
    return std::find(succs[u].begin(), succs[u].end(), v) != succs[u].end();
  }
};

inline Dag build_dag(const Circuit& c) {
  Dag d;
  const std::size_t m = c.size();
  d.preds.resize(m);
  d.succs.resize(m);
  d.layer.assign(m, 0);
  std::vector<long> last(static_cast<std::size_t>(c.width()), -1);
  for (std::size_t i = 0; i < m; ++i) {
    const Gate& g = c[i];
    std::size_t lay = 0;
    for (int k = 0; k < g.arity(); ++k) {
      const long p = last[static_cast<std::size_t>(g.qubit(k))];
      if (p >= 0) {
        const auto pu = static_cast<std::size_t>(p);
        if (std::find(d.preds[i].begin(), d.preds[i].end(), pu) == d.preds[i].end()) {
          d.preds[i].push_back(pu);
          d.succs[pu].push_back(i);
        }
        lay = std::max(lay, d.layer[pu] + 1);
      }
      last[static_cast<std::size_t>(g.qubit(k))] = static_cast<long>(i);
    }
    d.layer[i] = lay;
    d.depth = std::max(d.depth, lay + 1);
  }
  return d;
}

/// Ops grouped by DAG layer, preserving circuit order within a layer.
inline std::vector<std::vector<std::size_t>> layers_of(const Circuit& c) {
  const Dag d = build_dag(c);
  std::vector<std::vector<std::size_t>> out(d.depth);
  for (std::size_t i = 0; i < d.size(); ++i) out[d.layer[i]].push_back(i);
  return out;
}

/// Backward dependency cone of the final wire segments of `sinks`. Keeps exactly
/// the ops that can influence those qubits; relative order is preserved.
inline Circuit lightcone(const Circuit& c, const std::set<int>& sinks) {
  std::vector<bool> live(static_cast<std::size_t>(c.width()), false);
  for (int q : sinks) {
    require(q >= 0 && q < c.width(), "lightcone: sink qubit out of range");
    live[static_cast<std::size_t>(q)] = true;
  }
  std::vector<bool> keep(c.size(), false);
  for (std::size_t i = c.size(); i-- > 0;) {
    const Gate& g = c[i];
    bool touches = false;
    for (int k = 0; k < g.arity(); ++k) touches = touches || live[static_cast<std::size_t>(g.qubit(k))];
    if (!touches) continue;
    keep[i] = true;
    for (int k = 0; k < g.arity(); ++k) live[static_cast<std::size_t>(g.qubit(k))] = true;
  }
  Circuit out(c.width(), c.name());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (keep[i]) out.push(c[i]);
  return out;
}

/// Qubits touched by at least one op.
inline std::vector<int> active_qubits(const Circuit& c) {
  std::vector<bool> used(static_cast<std::size_t>(c.width()), false);
  for (const auto& g : c)
    for (int k = 0; k < g.arity(); ++k) used[static_cast<std::size_t>(g.qubit(k))] = true;
  std::vector<int> out;
  for (int q = 0; q < c.width(); ++q)
    if (used[static_cast<std::size_t>(q)]) out.push_back(q);
  return out;
}

}  // namespace vdcut
