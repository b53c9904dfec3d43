#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vdcut/circuit.hpp"

namespace vdcut {

enum class Entanglement { Circular, Linear, Full };

inline Entanglement entanglement_from_name(const std::string& s) {
  if (s == "circular") return Entanglement::Circular;
  if (s == "linear") return Entanglement::Linear;
  if (s == "full") return Entanglement::Full;
  throw Error("unknown entanglement pattern '" + s + "'");
}

inline std::string entanglement_name(Entanglement e) {
  switch (e) {
    case Entanglement::Circular: return "circular";
    case Entanglement::Linear: return "linear";
    case Entanglement::Full: return "full";
  }
  return "?";
}

/// CNOT (control, target) pairs of one entangling layer.
inline std::vector<std::pair<int, int>> entangling_pairs(int n, Entanglement e) {
  std::vector<std::pair<int, int>> out;
  if (n < 2) return out;
  switch (e) {
    case Entanglement::Circular:
      if (n > 2) out.emplace_back(n - 1, 0);
      for (int i = 0; i + 1 < n; ++i) out.emplace_back(i, i + 1);
      break;
    case Entanglement::Linear:
      for (int i = 0; i + 1 < n; ++i) out.emplace_back(i, i + 1);
      break;
    case Entanglement::Full:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
      break;
  }
  return out;
}

/// RY rotation layers interleaved with CNOT entangling layers.
struct RealAmplitudes {
  int n = 2;
  int reps = 2;
  Entanglement entanglement = Entanglement::Circular;

  RealAmplitudes(int n_, int reps_, Entanglement e = Entanglement::Circular) : n(n_), reps(reps_), entanglement(e) {
    require(n >= 1, "ansatz needs at least one qubit");
    require(reps >= 0, "ansatz repetitions must be non-negative");
  }

  int num_parameters() const { return n * (reps + 1); }

  Circuit bind(const std::vector<double>& theta) const {
    require(static_cast<int>(theta.size()) == num_parameters(), "parameter vector has wrong length");
    Circuit c(n, "real-amplitudes");
    const auto pairs = entangling_pairs(n, entanglement);
    for (int layer = 0; layer <= reps; ++layer) {
      for (int q = 0; q < n; ++q) c.push(Gate::ry(q, theta[static_cast<std::size_t>(layer * n + q)]));
      if (layer == reps) break;
      for (auto [a, b] : pairs) c.push(Gate::cnot(a, b));
    }
    return c;
  }
};

inline Circuit real_amplitudes(int n, int reps, Entanglement e, const std::vector<double>& theta) {
  return RealAmplitudes(n, reps, e).bind(theta);
}

}  // namespace vdcut
