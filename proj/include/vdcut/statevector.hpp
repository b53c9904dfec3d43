#pragma once

#include <cstdint>
#include <vector>

#include "vdcut/circuit.hpp"
#include "vdcut/error.hpp"
#include "vdcut/kernel.hpp"
#include "vdcut/linalg.hpp"

namespace vdcut {

/// Pure-state simulator used for noiseless reference values and the optimizer.
class StateVector {
 public:
  explicit StateVector(int n, std::uint64_t basis_state = 0) : n_(n), amp_(std::size_t{1} << n, cplx(0.0, 0.0)) {
    require(n >= 0 && n <= 26, "state vector width out of range");
    amp_.at(basis_state) = 1.0;
  }

  int width() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }

  void apply(const Gate& g) {
    if (g.is_measure()) return;
    if (g.arity() == 1) {
      kernel::LocalOp(std::vector<int>{g.qubit(0)}, MatX(g.matrix1())).apply(amp_, n_);
    } else {
      kernel::LocalOp(std::vector<int>{g.qubit(0), g.qubit(1)}, MatX(g.matrix2())).apply(amp_, n_);
    }
  }

  void run(const Circuit& c) {
    require(c.width() == n_, "circuit width does not match state");
    for (const auto& g : c) apply(g);
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) p[i] = std::norm(amp_[i]);
    return p;
  }

 private:
  int n_;
  std::vector<cplx> amp_;
};

inline StateVector simulate_pure(const Circuit& c) {
  StateVector sv(c.width());
  sv.run(c);
  return sv;
}

/// Full 2^n x 2^n unitary of a measurement-free circuit (column k = image of |k>).
inline MatX circuit_unitary(const Circuit& c) {
  require(c.width() <= 10, "circuit_unitary: width too large");
  const Eigen::Index d = Eigen::Index{1} << c.width();
  MatX u(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    StateVector sv(c.width(), static_cast<std::uint64_t>(k));
    sv.run(c);
    for (Eigen::Index r = 0; r < d; ++r) u(r, k) = sv.amplitudes()[static_cast<std::size_t>(r)];
  }
  return u;
}

}  // namespace vdcut
