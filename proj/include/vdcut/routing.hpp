#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "vdcut/circuit.hpp"
#include "vdcut/coupling_map.hpp"

namespace vdcut {

struct RoutedCircuit {
  Circuit physical;
  std::vector<int> initial_layout;  // logical -> physical
  std::vector<int> final_layout;
  std::size_t swaps = 0;
};

struct RoutingOptions {
  int lookahead = 20;
  std::vector<int> layout;  // logical -> physical; empty selects initial_layout
};

inline std::vector<int> initial_layout(const Circuit& c, const CouplingMap& map) {
  std::vector<int> layout(static_cast<std::size_t>(c.width()));
  if (map.is_full() || map.kind() == "linear") {
    for (int l = 0; l < c.width(); ++l) layout[static_cast<std::size_t>(l)] = l;
    return layout;
  }
  const std::vector<int> order = map.bfs_order(map.max_degree_qubit());
  for (int l = 0; l < c.width(); ++l) layout[static_cast<std::size_t>(l)] = order[static_cast<std::size_t>(l)];
  return layout;
}

/// Greedy lookahead SWAP insertion. Measurements are deferred to the end and
/// applied at the measured qubit's final position. The algorithm has no random
/// choices; `seed` is accepted for interface stability and recorded by callers.
inline RoutedCircuit route(const Circuit& c, const CouplingMap& map, std::uint64_t seed = 0,
                           RoutingOptions opt = {}) {
  (void)seed;
  require(c.width() <= map.size(), "route: circuit width " + std::to_string(c.width()) + " exceeds device size " +
                                        std::to_string(map.size()));
  RoutedCircuit out{Circuit(map.size(), c.name()), opt.layout.empty() ? initial_layout(c, map) : opt.layout, {}, 0};
  require(static_cast<int>(out.initial_layout.size()) == c.width(), "route: layout size differs from circuit width");
  std::vector<int> l2p = out.initial_layout;
  std::vector<int> p2l(static_cast<std::size_t>(map.size()), -1);
  for (int l = 0; l < c.width(); ++l) p2l[static_cast<std::size_t>(l2p[static_cast<std::size_t>(l)])] = l;

  std::vector<std::size_t> twoq;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].is_two_qubit()) twoq.push_back(i);
  std::size_t next2 = 0;

  auto do_swap = [&](int pa, int pb) {
    out.physical.push(Gate::swap(pa, pb, std::string(tags::kRouting)));
    ++out.swaps;
    const int la = p2l[static_cast<std::size_t>(pa)], lb = p2l[static_cast<std::size_t>(pb)];
    p2l[static_cast<std::size_t>(pa)] = lb;
    p2l[static_cast<std::size_t>(pb)] = la;
    if (la >= 0) l2p[static_cast<std::size_t>(la)] = pb;
    if (lb >= 0) l2p[static_cast<std::size_t>(lb)] = pa;
  };
  auto phys = [&](int l) { return l2p[static_cast<std::size_t>(l)]; };

  std::vector<Gate> measures;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c[i];
    if (g.is_measure()) {
      measures.push_back(g);
      continue;
    }
    if (g.arity() == 1) {
      out.physical.push(g.with_qubits({phys(g.qubit(0)), -1}));
      continue;
    }
    while (next2 < twoq.size() && twoq[next2] < i) ++next2;
    while (map.dist(phys(g.qubit(0)), phys(g.qubit(1))) > 1) {
      const int pa = phys(g.qubit(0)), pb = phys(g.qubit(1));
      const int cur = map.dist(pa, pb);
      long best_cost = std::numeric_limits<long>::max();
      std::pair<int, int> best{-1, -1};
      for (int end : {pa, pb})
        for (int nb : map.neighbors(end)) {
          std::pair<int, int> cand{std::min(end, nb), std::max(end, nb)};
          // distance of the current gate after the candidate swap
          auto moved = [&](int p) { return p == cand.first ? cand.second : (p == cand.second ? cand.first : p); };
          if (map.dist(moved(pa), moved(pb)) >= cur) continue;
          long cost = 0;
          for (std::size_t k = next2; k < twoq.size() && k < next2 + static_cast<std::size_t>(opt.lookahead); ++k) {
            const Gate& h = c[twoq[k]];
            cost += map.dist(moved(phys(h.qubit(0))), moved(phys(h.qubit(1))));
          }
          if (cost < best_cost || (cost == best_cost && cand < best)) {
            best_cost = cost;
            best = cand;
          }
        }
      require(best.first >= 0, "route: no distance-reducing swap found");
      do_swap(best.first, best.second);
    }
    out.physical.push(g.with_qubits({phys(g.qubit(0)), phys(g.qubit(1))}));
  }
  for (const auto& m : measures) out.physical.push(m.with_qubits({phys(m.qubit(0)), -1}));
  out.final_layout = l2p;
  return out;
}

/// Routing confined to a connected region of `width` device qubits. Every breadth-first
/// prefix of the device is a candidate region; each is routed from its default layout
/// and from layouts refined by alternating forward and reverse passes. The routing
/// with the fewest SWAPs wins (ties: earlier root, earlier pass). Qubit i of the
/// result is device qubit region[i].
struct RegionRouting {
  RoutedCircuit routed;
  std::vector<int> region;
  CouplingMap region_map;
};

inline RegionRouting route_in_region(const Circuit& c, const CouplingMap& device, std::uint64_t seed = 0,
                                     int refinements = 3) {
  require(c.width() <= device.size(), "route: circuit wider than device");
  const auto width = static_cast<std::size_t>(std::max(c.width(), 1));
  Circuit reversed(c.width(), c.name());
  for (std::size_t i = c.size(); i-- > 0;)
    if (!c[i].is_measure()) reversed.push(c[i]);

  std::optional<RegionRouting> best;
  std::set<std::vector<int>> seen;
  for (int root = 0; root < device.size(); ++root) {
    std::vector<int> order = device.bfs_order(root);
    order.resize(width);
    std::vector<int> key = order;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    CouplingMap sub = device.induced(order);
    RoutingOptions opt;
    for (int pass = 0; pass <= refinements; ++pass) {
      RoutedCircuit r = route(c, sub, seed, opt);
      if (!best || r.swaps < best->routed.swaps) best = RegionRouting{r, order, sub};
      if (best->routed.swaps == 0) return std::move(*best);
      RoutingOptions back;
      back.layout = r.final_layout;
      opt.layout = route(reversed, sub, seed, back).final_layout;
    }
  }
  return std::move(*best);
}

/// Every two-qubit gate lies on a coupling edge.
inline bool respects_coupling(const Circuit& c, const CouplingMap& map) {
  for (const auto& g : c)
    if (g.is_two_qubit() && !map.is_edge(g.qubit(0), g.qubit(1))) return false;
  return true;
}

}  // namespace vdcut
