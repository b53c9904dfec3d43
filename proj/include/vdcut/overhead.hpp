#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "vdcut/ansatz.hpp"
#include "vdcut/decompose.hpp"
#include "vdcut/parallel.hpp"
#include "vdcut/routing.hpp"
#include "vdcut/vdistill.hpp"

namespace vdcut {

struct OverheadPoint {
  int n = 0;
  int layers = 0;
  std::string map;
  std::size_t cnot_original = 0;
  std::size_t cnot_vd = 0;
  long cnot_extra = 0;  // cnot_vd - 2 * cnot_original
};

/// Routed CNOT count of a circuit on the map sized for it ("full"/"linear" grow with the circuit).
inline std::size_t routed_cnots(const Circuit& c, const std::string& map_spec) {
  const CouplingMap map = CouplingMap::from_spec(map_spec, c.width());
  return cnot_count(decompose_to_basis(route(c, map).physical));
}

inline OverheadPoint overhead_point(int n, int layers, const std::string& map_spec) {
  const RealAmplitudes ansatz(n, layers, Entanglement::Circular);
  const Circuit c = ansatz.bind(std::vector<double>(static_cast<std::size_t>(ansatz.num_parameters()), 0.1));
  OverheadPoint p{n, layers, map_spec, routed_cnots(c, map_spec), routed_cnots(build_vd_circuit(c).without_measurements(), map_spec), 0};
  p.cnot_extra = static_cast<long>(p.cnot_vd) - 2 * static_cast<long>(p.cnot_original);
  return p;
}

inline std::vector<OverheadPoint> overhead_sweep(const std::vector<int>& qubits, const std::vector<int>& layers,
                                                 const std::string& map_spec, int workers = 1) {
  std::vector<OverheadPoint> out(qubits.size() * layers.size());
  parallel_for(out.size(), workers, [&](std::size_t k) {
    out[k] = overhead_point(qubits[k / layers.size()], layers[k % layers.size()], map_spec);
  });
  return out;
}

inline std::string overhead_csv(const std::vector<OverheadPoint>& pts) {
  std::ostringstream out;
  out << "n,layers,map,cnot_original,cnot_vd,cnot_extra\n";
  for (const auto& p : pts)
    out << p.n << "," << p.layers << "," << p.map << "," << p.cnot_original << "," << p.cnot_vd << "," << p.cnot_extra << "\n";
  return out.str();
}

/// Least-squares slope of log(y) against log(x); requires positive data.
inline double power_law_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "power_law_exponent: need at least two points");
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    require(x[k] > 0 && y[k] > 0, "power_law_exponent: data must be positive");
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
  }
  require(sxx > 0, "power_law_exponent: x values are all equal");
  return sxy / sxx;
}

/// Exponent of cnot_extra against n for one layer count.
inline double extra_exponent(const std::vector<OverheadPoint>& pts, int layers) {
  std::vector<double> x, y;
  for (const auto& p : pts)
    if (p.layers == layers) {
      x.push_back(p.n);
      y.push_back(static_cast<double>(p.cnot_extra));
    }
  return power_law_exponent(x, y);
}

}  // namespace vdcut
