#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <vector>

#include "vdcut/circuit.hpp"
#include "vdcut/density_matrix.hpp"
#include "vdcut/distribution.hpp"
#include "vdcut/noise_model.hpp"
#include "vdcut/observable.hpp"
#include "vdcut/statevector.hpp"

namespace vdcut {

/// Channel applied for one gate: ideal unitary, then depolarizing, then relaxation.
inline MatX gate_superop(const Gate& g, const NoiseModel& noise) {
  if (g.arity() == 1) {
    MatX s = superop::from_unitary(MatX(g.matrix1()));
    if (noise.is_ideal(g)) return s;
    if (noise.p1 > 0) s = superop::depolarizing(1, noise.p1) * s;
    if (noise.duration1 > 0) s = superop::thermal_relaxation(noise.duration1, noise.t1, noise.t2) * s;
    return s;
  }
  MatX s = superop::from_unitary(MatX(g.matrix2()));
  if (noise.is_ideal(g)) return s;
  if (noise.p2 > 0) s = superop::depolarizing(2, noise.p2) * s;
  if (noise.duration2 > 0) {
    const MatX r = superop::thermal_relaxation(noise.duration2, noise.t1, noise.t2);
    s = superop::tensor(r, r) * s;
  }
  return s;
}

/// Density-matrix evolution from |0..0>. One-qubit channels are fused into the
/// next two-qubit channel on the same qubit before touching the state.
inline DensityMatrix evolve(const Circuit& c, const NoiseModel& noise) {
  require(!c.has_measurements(), "evolve: circuit contains measurements");
  require(static_cast<std::size_t>(c.width()) <= noise.max_qubits,
          "circuit width " + std::to_string(c.width()) + " exceeds simulator maximum " + std::to_string(noise.max_qubits));
  if (noise.noiseless) return DensityMatrix::from_pure(simulate_pure(c).amplitudes());

  DensityMatrix rho(c.width());
  std::vector<std::optional<MatX>> pending(static_cast<std::size_t>(c.width()));
  auto flush = [&](int q) {
    auto& p = pending[static_cast<std::size_t>(q)];
    if (p) rho.apply_superop({q}, *p);
    p.reset();
  };
  for (const auto& g : c) {
    MatX s = gate_superop(g, noise);
    if (g.arity() == 1) {
      auto& p = pending[static_cast<std::size_t>(g.qubit(0))];
      p = p ? MatX(s * *p) : s;
      continue;
    }
    const int a = g.qubit(0), b = g.qubit(1);
    auto& pa = pending[static_cast<std::size_t>(a)];
    auto& pb = pending[static_cast<std::size_t>(b)];
    if (pa || pb) {
      s = s * superop::tensor(pa ? *pa : superop::identity(1), pb ? *pb : superop::identity(1));
      pa.reset();
      pb.reset();
    }
    rho.apply_superop({a, b}, s);
  }
  for (int q = 0; q < c.width(); ++q) flush(q);
  return rho;
}

inline DensityMatrix evolve_noiseless(const Circuit& c) { return evolve(c, NoiseModel::ideal()); }

/// Computational-basis diagonal; tiny negatives are clamped, larger ones are a bug.
inline Distribution exact_probs(const DensityMatrix& dm) {
  std::vector<double> p = dm.diagonal();
  for (double& v : p) {
    require(v >= -1e-10, "negative diagonal entry in density matrix");
    if (v < 0) v = 0;
  }
  return Distribution::normalized(dm.width(), std::move(p));
}

inline double expectation(const Distribution& d, const PauliObservable& obs) {
  obs.check_width(d.width());
  require(obs.is_diagonal(), "non-diagonal observable cannot be evaluated on a distribution");
  double total = 0;
  for (const auto& t : obs.terms()) {
    const std::uint64_t m = z_mask(t.paulis);
    double s = 0;
    for (std::uint64_t x = 0; x < d.size(); ++x) s += (std::popcount(x & m) & 1) ? -d[x] : d[x];
    total += t.coeff * s;
  }
  return total;
}

/// Tr(O rho) for arbitrary Pauli strings.
inline double expectation(const DensityMatrix& dm, const PauliObservable& obs) {
  obs.check_width(dm.width());
  double total = 0;
  for (const auto& t : obs.terms()) {
    std::uint64_t xm = 0, ym = 0, zm = 0;
    for (std::size_t k = 0; k < t.paulis.size(); ++k) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      if (t.paulis[k] == 'X') xm |= bit;
      if (t.paulis[k] == 'Y') xm |= bit, ym |= bit;
      if (t.paulis[k] == 'Z') zm |= bit;
    }
    const int ny = std::popcount(ym);
    const cplx iy = std::pow(kI, ny);
    cplx s = 0;
    for (std::uint64_t x = 0; x < dm.dim(); ++x) {
      // P|x> = coef(x) |x ^ xm>, so Tr(P rho) = sum_x coef(x) rho[x][x ^ xm]
      const int sign = std::popcount(x & (ym | zm)) & 1;
      const cplx coef = sign ? -iy : iy;
      s += coef * dm(x, x ^ xm);
    }
    total += t.coeff * s.real();
  }
  return total;
}

/// Readout-crosstalk pairs: coupled measured bits, matched greedily in ascending order.
inline std::vector<std::pair<int, int>> crosstalk_pairs(const std::vector<int>& bit_qubits,
                                                        const std::vector<std::pair<int, int>>& adjacency) {
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : adjacency) edges.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<int> bit_of_qubit;
  for (std::size_t k = 0; k < bit_qubits.size(); ++k) {
    const auto q = static_cast<std::size_t>(bit_qubits[k]);
    if (bit_of_qubit.size() <= q) bit_of_qubit.resize(q + 1, -1);
    bit_of_qubit[q] = static_cast<int>(k);
  }
  auto bit = [&](int q) {
    return q >= 0 && static_cast<std::size_t>(q) < bit_of_qubit.size() ? bit_of_qubit[static_cast<std::size_t>(q)] : -1;
  };
  std::vector<bool> used(bit_qubits.size(), false);
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : edges) {
    const int ba = bit(a), bb = bit(b);
    if (ba < 0 || bb < 0 || used[static_cast<std::size_t>(ba)] || used[static_cast<std::size_t>(bb)]) continue;
    used[static_cast<std::size_t>(ba)] = used[static_cast<std::size_t>(bb)] = true;
    out.emplace_back(ba, bb);
  }
  return out;
}

/// Applies per-qubit confusion and, when enabled, pairwise readout crosstalk.
/// `bit_qubits[k]` names the circuit qubit that produced bit k (identity if empty).
inline Distribution apply_readout(const Distribution& dist, const NoiseModel& noise, std::vector<int> bit_qubits = {}) {
  const int n = dist.width();
  if (bit_qubits.empty())
    for (int k = 0; k < n; ++k) bit_qubits.push_back(k);
  require(static_cast<int>(bit_qubits.size()) == n, "apply_readout: bit map size mismatch");
  if (noise.noiseless) return dist;
  std::vector<double> p = dist.probs();
  std::vector<double> q(p.size());
  for (int k = 0; k < n; ++k) {
    const Confusion2& c = noise.confusion_for(bit_qubits[static_cast<std::size_t>(k)]);
    const std::uint64_t bit = std::uint64_t{1} << k;
    for (std::uint64_t x = 0; x < p.size(); ++x) {
      if (x & bit) continue;
      const double p0 = p[x], p1 = p[x | bit];
      q[x] = p0 * c[0][0] + p1 * c[1][0];
      q[x | bit] = p0 * c[0][1] + p1 * c[1][1];
    }
    p.swap(q);
  }
  if (noise.readout_crosstalk) {
    const auto& m = noise.crosstalk_matrix;
    for (auto [ba, bb] : crosstalk_pairs(bit_qubits, noise.adjacency)) {
      const std::uint64_t ma = std::uint64_t{1} << ba, mb = std::uint64_t{1} << bb;
      for (std::uint64_t x = 0; x < p.size(); ++x) {
        if (x & (ma | mb)) continue;
        const std::array<std::uint64_t, 4> idx{x, x | mb, x | ma, x | ma | mb};  // local index = 2*a + b
        std::array<double, 4> in{};
        for (std::size_t l = 0; l < 4; ++l) in[l] = p[idx[l]];
        for (std::size_t o = 0; o < 4; ++o) {
          double acc = 0;
          for (std::size_t l = 0; l < 4; ++l) acc += in[l] * m[l][o];
          q[idx[o]] = acc;
        }
      }
      p.swap(q);
    }
  }
  return Distribution::normalized(n, std::move(p));
}

/// Noisy (or noiseless) output distribution of a measured circuit over its
/// measured qubits in Measure order, readout error included.
inline Distribution run_exact(const Circuit& c, const NoiseModel& noise) {
  const std::vector<int> measured = c.measured_qubits();
  require(!measured.empty(), "run_exact: circuit has no measurements");
  const DensityMatrix rho = evolve(c.without_measurements(), noise);
  const Distribution full = exact_probs(rho);
  const Distribution m = marginal(full, measured);
  return apply_readout(m, noise, measured);
}

}  // namespace vdcut
