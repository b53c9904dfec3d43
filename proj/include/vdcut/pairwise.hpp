#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "vdcut/circuit_io.hpp"
#include "vdcut/cutting.hpp"
#include "vdcut/dag.hpp"
#include "vdcut/execution.hpp"
#include "vdcut/vdistill.hpp"

namespace vdcut {

/// One pair (i, n+i) of the VD circuit, pruned and cut at both wires entering its
/// diagonalizing gate.
struct PairwisePipeline {
  int pair = 0;
  int n = 0;
  Circuit pruned;     // VD circuit reduced to the pair's lightcone, measuring (i, n+i)
  Circuit quantum;    // upstream copies, no "diag" gates
  Circuit classical;  // the diagonalizing gate and the pair measurement
  Mat4 diag_unitary;
  CutDecomposition cut;
};

inline std::vector<PairwisePipeline> build_pairwise_pipelines(const Circuit& original,
                                                              const DiagonalizingGate& b = DiagonalizingGate::standard()) {
  const Circuit vd = build_vd_circuit(original, b);
  const int n = original.width();
  const Circuit body = vd.without_measurements();
  std::vector<PairwisePipeline> out;
  for (int i = 0; i < n; ++i) {
    PairwisePipeline p;
    p.pair = i;
    p.n = n;
    p.diag_unitary = b.unitary;
    Circuit cone = lightcone(body, {i, n + i});
    // the other pairs' diagonalizing gates touch disjoint qubits and are never in the cone
    long diag_at = -1;
    for (std::size_t k = 0; k < cone.size(); ++k)
      if (cone[k].tag() == tags::kDiag) diag_at = static_cast<long>(k);
    require(diag_at >= 0, "pairwise: diagonalizing gate missing from lightcone");
    p.pruned = cone;
    p.pruned.set_name(original.name() + "-pair" + std::to_string(i));
    p.pruned.push(Gate::measure(i));
    p.pruned.push(Gate::measure(n + i));
    p.cut = cut_wires(p.pruned, {CutPoint{i, diag_at - 1}, CutPoint{n + i, diag_at - 1}}, true);
    p.quantum = p.cut.upstream;
    p.classical = p.cut.downstream;
    p.classical.push(Gate::measure(i));
    p.classical.push(Gate::measure(n + i));
    require(p.quantum.count_tag(tags::kDiag) == 0 && p.classical.count_tag(tags::kDiag) == 1,
            "pairwise: unexpected split of the diagonalizing gate");
    out.push_back(std::move(p));
  }
  return out;
}

/// Memo for prepare-side (classical) simulations keyed by the diagonalizing gate's bytes.
/// Concurrent readers, single writer.
class ClassicalCache {
 public:
  const std::vector<Distribution>* find(const std::string& key) {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it == memo_.end()) return nullptr;
    ++hits_;
    return &it->second;
  }

  const std::vector<Distribution>& insert(const std::string& key, std::vector<Distribution> v) {
    std::unique_lock lock(mu_);
    ++simulations_;
    return memo_.emplace(key, std::move(v)).first->second;
  }

  std::size_t hits() const { return hits_; }
  std::size_t simulations() const { return simulations_; }

  static std::string key_of(const Mat4& u) {
    std::string k(sizeof(cplx) * 16, '\0');
    std::memcpy(k.data(), u.data(), k.size());
    return k;
  }

 private:
  std::shared_mutex mu_;
  std::map<std::string, std::vector<Distribution>> memo_;
  std::atomic<std::size_t> hits_{0};
  std::size_t simulations_ = 0;
};

/// Qubits of each connected component (gates link qubits), active qubits only.
inline std::vector<std::vector<int>> connected_components(const Circuit& c) {
  std::vector<int> parent(static_cast<std::size_t>(c.width()));
  for (int q = 0; q < c.width(); ++q) parent[static_cast<std::size_t>(q)] = q;
  auto find = [&](int q) {
    while (parent[static_cast<std::size_t>(q)] != q) q = parent[static_cast<std::size_t>(q)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(q)])];
    return q;
  };
  for (const auto& g : c)
    if (g.arity() == 2) parent[static_cast<std::size_t>(find(g.qubit(0)))] = find(g.qubit(1));
  std::map<int, std::vector<int>> groups;
  for (int q : active_qubits(c)) groups[find(q)].push_back(q);
  std::vector<std::vector<int>> out;
  for (auto& [root, qs] : groups) out.push_back(std::move(qs));
  std::sort(out.begin(), out.end());
  return out;
}

struct FragmentStats {
  std::string label;
  std::size_t cnots = 0;
  std::size_t rzz = 0;
};

struct PairwiseRun {
  Distribution pairwise;  // bits (q_i, q_i')
  std::vector<FragmentStats> fragments;
};

struct PairwiseOptions {
  std::uint64_t shots = 0;  // 0: exact fragment distributions
  std::uint64_t seed = 0;
};

/// Executes the quantum side on `device` under `noise` (each connected component as
/// its own fragment) and the classical side exactly, then stitches the pair distribution.
inline PairwiseRun run_pairwise(const PairwisePipeline& p, const NoiseModel& noise, const CouplingMap& device,
                                ClassicalCache& cache, const PairwiseOptions& opt = {}) {
  const ReconstructionPlan& plan = p.cut.plan;
  require(plan.upstream_bits.empty(), "run_pairwise: quantum side must not produce output bits");
  PairwiseRun out;

  // Measure side: each job factorizes over connected components.
  std::map<std::string, DeviceRun> memo;
  std::vector<Distribution> measure;
  for (std::size_t v = 0; v < p.cut.measure_jobs.size(); ++v) {
    const FragmentJob& job = p.cut.measure_jobs[v];
    const std::vector<int> bit_qubits = job.circuit.measured_qubits();
    std::vector<double> joint{1.0};
    std::vector<int> order;  // joint bit k belongs to job bit order[k]
    for (const auto& comp : connected_components(job.circuit)) {
      std::vector<int> local(static_cast<std::size_t>(job.circuit.width()), -1);
      for (std::size_t k = 0; k < comp.size(); ++k) local[static_cast<std::size_t>(comp[k])] = static_cast<int>(k);
      Circuit frag(static_cast<int>(comp.size()), p.pruned.name() + "-frag");
      std::vector<int> comp_bits;
      for (const auto& g : job.circuit) {
        const int a = local[static_cast<std::size_t>(g.qubit(0))];
        if (a < 0) continue;
        frag.push(g.with_qubits({a, g.arity() == 2 ? local[static_cast<std::size_t>(g.qubit(1))] : -1}));
        if (g.is_measure())
          comp_bits.push_back(static_cast<int>(std::find(bit_qubits.begin(), bit_qubits.end(), g.qubit(0)) - bit_qubits.begin()));
      }
      if (comp_bits.empty()) continue;
      const std::string key = to_text(frag);
      auto it = memo.find(key);
      if (it == memo.end()) {
        it = memo.emplace(key, run_on_device(frag, device, noise)).first;
        out.fragments.push_back({"pair" + std::to_string(p.pair) + "-frag" + std::to_string(memo.size() - 1),
                                  it->second.cnots, it->second.rzz});
      }
      const Distribution& d = it->second.dist;
      std::vector<double> next(joint.size() * d.size());
      for (std::size_t a = 0; a < joint.size(); ++a)
        for (std::size_t b = 0; b < d.size(); ++b) next[a | (b * joint.size())] = joint[a] * d[b];
      joint = std::move(next);
      order.insert(order.end(), comp_bits.begin(), comp_bits.end());
    }
    require(order.size() == bit_qubits.size(), "run_pairwise: unmeasured component");
    std::vector<double> arranged(joint.size(), 0.0);
    for (std::size_t x = 0; x < joint.size(); ++x) {
      std::uint64_t y = 0;
      for (std::size_t k = 0; k < order.size(); ++k)
        if ((x >> k) & 1U) y |= std::uint64_t{1} << order[k];
      arranged[y] += joint[x];
    }
    Distribution d = Distribution::normalized(static_cast<int>(order.size()), std::move(arranged));
    if (opt.shots > 0) {
      const std::uint64_t s = splitmix64(opt.seed ^ splitmix64((static_cast<std::uint64_t>(p.pair) << 8) | v));
      d = sample(d, opt.shots, s).frequencies();
    }
    measure.push_back(std::move(d));
  }

  // Prepare side: noiseless, exact, memoized per diagonalizing gate.
  const std::string key = ClassicalCache::key_of(p.diag_unitary);
  const std::vector<Distribution>* prepared = cache.find(key);
  if (!prepared) {
    std::vector<Distribution> v;
    for (const auto& job : p.cut.prepare_jobs) {
      const std::vector<int> act = active_qubits(job.circuit);
      std::vector<int> local(static_cast<std::size_t>(job.circuit.width()), -1);
      for (std::size_t k = 0; k < act.size(); ++k) local[static_cast<std::size_t>(act[k])] = static_cast<int>(k);
      Circuit frag(static_cast<int>(act.size()));
      for (const auto& g : job.circuit)
        frag.push(g.with_qubits({local[static_cast<std::size_t>(g.qubit(0))],
                                 g.arity() == 2 ? local[static_cast<std::size_t>(g.qubit(1))] : -1}));
      v.push_back(run_exact(frag, NoiseModel::ideal()));
    }
    prepared = &cache.insert(key, std::move(v));
  }
  out.pairwise = reconstruct(plan, measure, *prepared, clamp_epsilon(opt.shots));
  return out;
}

/// Q(x) ∝ P_um(x) · Π_i P_i(x_i, x_i') / M_i(x_i, x_i').
inline Distribution recombine(const Distribution& unmitigated, const std::vector<Distribution>& pairwise) {
  const int w = unmitigated.width();
  require(w % 2 == 0, "recombine: unmitigated distribution must cover 2n bits");
  const int n = w / 2;
  require(static_cast<int>(pairwise.size()) == n, "recombine: need one pairwise distribution per pair");
  std::vector<std::array<double, 4>> ratio(static_cast<std::size_t>(n));
  std::vector<std::array<bool, 4>> missing(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    require(pairwise[static_cast<std::size_t>(i)].width() == 2, "recombine: pairwise distributions are over 2 bits");
    const Distribution m = marginal(unmitigated, {i, n + i});
    for (std::size_t l = 0; l < 4; ++l) {
      const double pm = pairwise[static_cast<std::size_t>(i)][l];
      missing[static_cast<std::size_t>(i)][l] = m[l] < 1e-12;
      ratio[static_cast<std::size_t>(i)][l] = m[l] < 1e-12 ? 0.0 : pm / m[l];
    }
  }
  auto local = [n](std::uint64_t x, int i) { return static_cast<std::size_t>(((x >> i) & 1U) | (((x >> (n + i)) & 1U) << 1)); };
  std::vector<double> q(unmitigated.size(), 0.0);
  for (std::uint64_t x = 0; x < q.size(); ++x) {
    double v = unmitigated[x];
    for (int i = 0; i < n && v != 0.0; ++i) v *= ratio[static_cast<std::size_t>(i)][local(x, i)];
    q[x] = v;
  }
  const double spread = 1.0 / static_cast<double>(std::uint64_t{1} << (w - 2));
  for (int i = 0; i < n; ++i)
    for (std::size_t l = 0; l < 4; ++l) {
      if (!missing[static_cast<std::size_t>(i)][l]) continue;
      const double mass = pairwise[static_cast<std::size_t>(i)][l] * spread;
      if (mass == 0.0) continue;
      for (std::uint64_t x = 0; x < q.size(); ++x)
        if (local(x, i) == l) q[x] += mass;
    }
  double total = 0;
  for (double v : q) total += v;
  if (!(total > 0)) throw Error("recombine: product of pairwise updates vanishes everywhere");
  return Distribution::normalized(w, std::move(q));
}

struct CutRunResult {
  VDEstimate estimate;
  Distribution unmitigated;
  Distribution recombined;
  std::vector<Distribution> pairwise;
  std::vector<FragmentStats> fragments;
  DeviceRun uncut;
  std::size_t cache_hits = 0;
};

struct CutRunOptions {
  std::uint64_t shots = 0;  // 0: exact everywhere
  std::uint64_t seed = 0;
  DiagonalizingGate gate = DiagonalizingGate::standard();
  const DeviceRun* uncut = nullptr;  // reuse an existing uncut VD run
};

/// Uncut noisy VD run for P_um, all pairwise pipelines, recombination, then the VD
/// weights evaluated exactly on the recombined distribution.
inline CutRunResult mitigated_expectation_cut(const Circuit& original, const PauliObservable& obs,
                                              const NoiseModel& noise, const CouplingMap& device,
                                              const CutRunOptions& opt = {}) {
  CutRunResult r;
  r.uncut = opt.uncut ? *opt.uncut : run_on_device(build_vd_circuit(original, opt.gate), device, noise);
  r.unmitigated = opt.shots > 0 ? sample(r.uncut.dist, opt.shots, splitmix64(opt.seed)).frequencies() : r.uncut.dist;
  ClassicalCache cache;
  for (const auto& p : build_pairwise_pipelines(original, opt.gate)) {
    PairwiseRun pr = run_pairwise(p, noise, device, cache, {opt.shots, splitmix64(opt.seed + 1)});
    r.pairwise.push_back(std::move(pr.pairwise));
    r.fragments.insert(r.fragments.end(), pr.fragments.begin(), pr.fragments.end());
  }
  r.cache_hits = cache.hits();
  r.recombined = recombine(r.unmitigated, r.pairwise);
  r.estimate = estimate_from_distribution(r.recombined, obs, opt.shots, opt.gate);
  return r;
}

}  // namespace vdcut
