#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "vdcut/execution.hpp"
#include "vdcut/vdistill.hpp"

namespace vdcut {

/// Each "diag"-tagged gate G becomes G (G^dagger G)^((scale-1)/2).
inline Circuit fold_diagonalizing(const Circuit& c, int scale) {
  require(scale >= 1 && scale % 2 == 1, "fold_diagonalizing: scale must be an odd positive integer");
  require(c.count_tag(tags::kDiag) > 0, "fold_diagonalizing: circuit has no diagonalizing gates");
  Circuit out(c.width(), c.name() + "-x" + std::to_string(scale));
  for (const auto& g : c) {
    out.push(g);
    if (g.tag() != tags::kDiag) continue;
    for (int k = 0; k < (scale - 1) / 2; ++k) {
      out.push(g.adjoint());
      out.push(g);
    }
  }
  return out;
}

struct ScaledRun {
  int scale = 1;
  double value = 0;
  double se = 0;
};

/// OLS fit of value against scale, evaluated at scale 0.
inline double extrapolate_linear(const std::vector<ScaledRun>& runs) {
  require(runs.size() >= 2, "extrapolate_linear: need at least two runs");
  double mx = 0, my = 0;
  for (const auto& r : runs) {
    mx += r.scale;
    my += r.value;
  }
  mx /= static_cast<double>(runs.size());
  my /= static_cast<double>(runs.size());
  double sxx = 0, sxy = 0;
  for (const auto& r : runs) {
    sxx += (r.scale - mx) * (r.scale - mx);
    sxy += (r.scale - mx) * (r.value - my);
  }
  require(sxx > 0, "extrapolate_linear: all scales are equal");
  return my - (sxy / sxx) * mx;
}

struct VDRun {
  VDEstimate estimate;
  DeviceRun device;
  Distribution observed;  // exact, or frequencies when sampled
};

/// Uncut VD on the device; `shots` = 0 weights the exact distribution.
inline VDRun run_vd(const Circuit& vd_circuit, const PauliObservable& obs, const NoiseModel& noise,
                    const CouplingMap& device, std::uint64_t shots, std::uint64_t seed,
                    const DiagonalizingGate& b = DiagonalizingGate::standard()) {
  VDRun r;
  r.device = run_on_device(vd_circuit, device, noise);
  r.observed = shots > 0 ? sample(r.device.dist, shots, seed).frequencies() : r.device.dist;
  r.estimate = estimate_from_distribution(r.observed, obs, shots, b);
  return r;
}

struct ZNEResult {
  double value = 0;
  std::vector<ScaledRun> runs;
  std::vector<DeviceRun> devices;
};

inline ZNEResult mitigated_expectation_zne(const Circuit& original, const PauliObservable& obs, const NoiseModel& noise,
                                           const CouplingMap& device, std::uint64_t shots, std::uint64_t seed,
                                           const std::vector<int>& scales = {1, 3, 5},
                                           const DiagonalizingGate& b = DiagonalizingGate::standard()) {
  ZNEResult z;
  const Circuit vd = build_vd_circuit(original, b);
  for (int s : scales) {
    VDRun r = run_vd(fold_diagonalizing(vd, s), obs, noise, device, shots, splitmix64(seed + static_cast<std::uint64_t>(s)), b);
    const double v = r.estimate.value();
    const double rel_n = r.estimate.numerator == 0 ? 0 : r.estimate.numerator_se / r.estimate.numerator;
    const double rel_d = r.estimate.denominator_se / r.estimate.denominator;
    z.runs.push_back({s, v, std::abs(v) * std::sqrt(rel_n * rel_n + rel_d * rel_d)});
    z.devices.push_back(r.device);
  }
  z.value = extrapolate_linear(z.runs);
  return z;
}

}  // namespace vdcut
