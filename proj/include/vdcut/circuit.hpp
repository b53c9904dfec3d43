#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "vdcut/error.hpp"
#include "vdcut/gate.hpp"

namespace vdcut {

/// Ordered gate list over a fixed number of qubits. Measurements are terminal
/// per qubit: once a qubit is measured no further operation may touch it.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int width, std::string name = {}) : width_(width), name_(std::move(name)) {
    require(width >= 0, "circuit width must be non-negative");
    measured_.assign(static_cast<std::size_t>(width), false);
  }

  int width() const { return width_; }
  const std::string& name() const { return name_; }
  const std::vector<Gate>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  const Gate& operator[](std::size_t i) const { return ops_[i]; }
  auto begin() const { return ops_.begin(); }
  auto end() const { return ops_.end(); }

  void set_name(std::string n) { name_ = std::move(n); }

  /// Appends in place after validating indices and the terminal-measurement rule.
  Circuit& push(Gate g) {
    for (int i = 0; i < g.arity(); ++i) {
      const int q = g.qubit(i);
      if (q >= width_)
        throw Error("qubit index " + std::to_string(q) + " out of range for width " + std::to_string(width_));
      if (measured_[static_cast<std::size_t>(q)])
        throw Error("operation after measurement on qubit " + std::to_string(q));
    }
    if (g.is_measure()) measured_[static_cast<std::size_t>(g.qubit(0))] = true;
    ops_.push_back(std::move(g));
    return *this;
  }

  bool has_measurements() const {
    return std::any_of(ops_.begin(), ops_.end(), [](const Gate& g) { return g.is_measure(); });
  }

  /// Measured qubits in order of their Measure operations.
  std::vector<int> measured_qubits() const {
    std::vector<int> out;
    for (const auto& g : ops_)
      if (g.is_measure()) out.push_back(g.qubit(0));
    return out;
  }

  /// Copy without Measure operations.
  Circuit without_measurements() const {
    Circuit c(width_, name_);
    for (const auto& g : ops_)
      if (!g.is_measure()) c.push(g);
    return c;
  }

  std::size_t count_if_kind(GateKind k) const {
    return static_cast<std::size_t>(std::count_if(ops_.begin(), ops_.end(), [k](const Gate& g) { return g.kind() == k; }));
  }

  std::size_t count_tag(std::string_view tag) const {
    return static_cast<std::size_t>(std::count_if(ops_.begin(), ops_.end(), [tag](const Gate& g) { return g.tag() == tag; }));
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.width_ == b.width_ && a.ops_ == b.ops_;
  }

 private:
  int width_ = 0;
  std::string name_;
  std::vector<Gate> ops_;
  std::vector<bool> measured_;
};

inline Circuit append(const Circuit& circuit, Gate gate) {
  Circuit out = circuit;
  out.push(std::move(gate));
  return out;
}

/// Two independent copies on 2n qubits; qubit i of copy 0 pairs with n+i of copy 1.
inline Circuit tensor_two_copies(const Circuit& circuit) {
  require(!circuit.has_measurements(), "tensor_two_copies: input contains measurements");
  const int n = circuit.width();
  Circuit out(2 * n, circuit.name().empty() ? "two-copy" : circuit.name() + "-x2");
  for (const auto& g : circuit) out.push(g.with_tag(std::string(tags::kCopy0)));
  for (const auto& g : circuit) {
    std::array<int, 2> q = g.qubits();
    q[0] += n;
    if (g.arity() == 2) q[1] += n;
    out.push(g.with_qubits(q).with_tag(std::string(tags::kCopy1)));
  }
  return out;
}

/// Relabels qubits through `map` (old index -> new index) into a circuit of `width`.
inline Circuit remap_qubits(const Circuit& circuit, const std::vector<int>& map, int width) {
  Circuit out(width, circuit.name());
  for (const auto& g : circuit) {
    std::array<int, 2> q = g.qubits();
    q[0] = map.at(static_cast<std::size_t>(q[0]));
    if (g.arity() == 2) q[1] = map.at(static_cast<std::size_t>(q[1]));
    out.push(g.with_qubits(q));
  }
  return out;
}

/// Concatenation of two circuits of the same width.
inline Circuit concat(const Circuit& a, const Circuit& b) {
  require(a.width() == b.width(), "concat: width mismatch");
  Circuit out = a;
  for (const auto& g : b) out.push(g);
  return out;
}

}  // namespace vdcut
