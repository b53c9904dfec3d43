#pragma once

#include <string>

#include "vdcut/coupling_map.hpp"
#include "vdcut/crosstalk.hpp"
#include "vdcut/decompose.hpp"
#include "vdcut/routing.hpp"
#include "vdcut/simulator.hpp"

namespace vdcut {

/// A circuit as it would run on hardware: routed into a device region, lowered to
/// basis gates, with the ZZ-crosstalk gates the schedule would provoke.
struct CompiledCircuit {
  Circuit physical;        // routed + decomposed, crosstalk not inserted
  Circuit with_crosstalk;  // physical + inserted RZZ gates
  CouplingMap region_map;
  std::vector<int> region;  // region qubit -> device qubit
  std::size_t swaps = 0;
  std::size_t cnots = 0;
  std::size_t rzz = 0;
};

inline CompiledCircuit compile_for_device(const Circuit& c, const CouplingMap& device, double rzz_angle = -kPi / 3.5) {
  RegionRouting rr = route_in_region(c, device);
  CompiledCircuit out{decompose_to_basis(rr.routed.physical), {}, std::move(rr.region_map), std::move(rr.region),
                      rr.routed.swaps, 0, 0};
  out.with_crosstalk = insert_zz_crosstalk(out.physical, out.region_map, rzz_angle);
  out.cnots = cnot_count(out.physical);
  out.rzz = out.with_crosstalk.count_tag(tags::kCrosstalk);
  return out;
}

struct DeviceRun {
  Distribution dist;
  std::size_t cnots = 0;
  std::size_t rzz = 0;
  std::size_t swaps = 0;
};

/// Exact output distribution of a measured circuit executed on `device` under `noise`.
inline DeviceRun run_on_device(const Circuit& c, const CouplingMap& device, const NoiseModel& noise) {
  const CompiledCircuit cc = compile_for_device(c, device, noise.rzz_angle);
  NoiseModel nm = noise;
  nm.adjacency = cc.region_map.edges();
  const Circuit& exec = noise.gate_crosstalk && !noise.noiseless ? cc.with_crosstalk : cc.physical;
  return {run_exact(exec, nm), cc.cnots, cc.rzz, cc.swaps};
}

}  // namespace vdcut
