#include <gtest/gtest.h>

#include <random>

#include "vdcut/ansatz.hpp"
#include "vdcut/circuit_io.hpp"
#include "vdcut/dag.hpp"
#include "vdcut/simulator.hpp"

using namespace vdcut;

namespace {

Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_int_distribution<int> q(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 6);
  for (int i = 0; i < gates; ++i) {
    const int a = q(rng);
    int b = q(rng);
    while (n > 1 && b == a) b = q(rng);
    switch (n > 1 ? kind(rng) : kind(rng) % 4) {
      case 0: c.push(Gate::ry(a, ang(rng))); break;
      case 1: c.push(Gate::rz(a, ang(rng))); break;
      case 2: c.push(Gate::h(a)); break;
      case 3: c.push(Gate::x(a)); break;
      case 4: c.push(Gate::cnot(a, b)); break;
      case 5: c.push(Gate::rzz(a, b, ang(rng))); break;
      default: c.push(Gate::swap(a, b)); break;
    }
  }
  return c;
}

std::vector<double> fixed_params(int count, double scale = 0.37) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = scale * (i + 1) - 0.5 * (i % 3);
  return t;
}

}  // namespace

TEST(Append, AddsGateWithValueSemantics) {
  const Circuit empty(2);
  const Circuit c = append(empty, Gate::cnot(0, 1));
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(empty.size(), 0u);
}

TEST(Append, RejectsOutOfRangeQubit) { EXPECT_THROW(append(Circuit(1), Gate::cnot(0, 1)), Error); }

TEST(Append, RejectsGateAfterMeasurement) {
  const Circuit c = append(Circuit(1), Gate::measure(0));
  EXPECT_THROW(append(c, Gate::ry(0, 0.1)), Error);
}

TEST(GateInvariants, Validation) {
  EXPECT_THROW(Gate::cnot(1, 1), Error);
  EXPECT_THROW(Gate::ry(-1, 0.2), Error);
  Mat4 bad = Mat4::Identity();
  bad(0, 0) = 1.0 + 1e-9;
  EXPECT_THROW(Gate::unitary(0, 1, bad), Error);
  EXPECT_NO_THROW(Gate::unitary(0, 1, mat::swap()));
  EXPECT_THROW(Gate::make(GateKind::X, {0, -1}, 0.3, std::nullopt, ""), Error);
  EXPECT_THROW(Gate::make(GateKind::RY, {0, -1}, std::nullopt, std::nullopt, ""), Error);
  EXPECT_THROW(Gate::make(GateKind::CNOT, {0, 1}, std::nullopt, Mat4::Identity(), ""), Error);
}

TEST(TensorTwoCopies, SingleRotation) {
  Circuit c(1);
  c.push(Gate::ry(0, 0.4));
  const Circuit t = tensor_two_copies(c);
  ASSERT_EQ(t.width(), 2);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].qubit(0), 0);
  EXPECT_EQ(t[1].qubit(0), 1);
  EXPECT_DOUBLE_EQ(t[1].angle(), 0.4);
  EXPECT_EQ(t[0].tag(), "copy-0");
  EXPECT_EQ(t[1].tag(), "copy-1");
}

TEST(TensorTwoCopies, DoublesGateCount) {
  std::mt19937_64 rng(3);
  const Circuit c = random_circuit(3, 17, rng);
  EXPECT_EQ(tensor_two_copies(c).size(), 34u);
}

TEST(TensorTwoCopies, RejectsMeasurement) {
  Circuit c(1);
  c.push(Gate::measure(0));
  EXPECT_THROW(tensor_two_copies(c), Error);
}

TEST(TensorTwoCopies, NoiselessStateIsProduct) {
  const Circuit c = real_amplitudes(3, 2, Entanglement::Circular, fixed_params(9));
  const DensityMatrix rho = evolve_noiseless(c);
  const DensityMatrix both = evolve_noiseless(tensor_two_copies(c));
  EXPECT_LT(frobenius_distance(both, tensor(rho, rho)), 1e-12);
}

TEST(TensorTwoCopies, NoisyCopiesStayUncorrelated) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Circuit c = random_circuit(2, 12, rng);
    const DensityMatrix both = evolve_noiseless(tensor_two_copies(c));
    const DensityMatrix rho = evolve_noiseless(c);
    EXPECT_LT(frobenius_distance(both, tensor(rho, rho)), 1e-12);
  }
}

TEST(Lightcone, DropsIndependentGate) {
  Circuit c(2);
  c.push(Gate::ry(0, 0.1)).push(Gate::ry(1, 0.2));
  const Circuit p = lightcone(c, {0});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].qubit(0), 0);
}

TEST(Lightcone, FollowsCnotDependency) {
  Circuit c(3);
  c.push(Gate::cnot(0, 1)).push(Gate::ry(2, 0.3));
  const Circuit p = lightcone(c, {1});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].kind(), GateKind::CNOT);
}

TEST(Lightcone, SoundAndIdempotentOnRandomCircuits) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const Circuit c = random_circuit(n, 6 + trial % 9, rng);
    std::set<int> sinks{static_cast<int>(rng() % n)};
    if (trial % 2) sinks.insert(static_cast<int>(rng() % n));
    const Circuit p = lightcone(c, sinks);
    EXPECT_EQ(lightcone(p, sinks), p);
    const std::vector<int> keep(sinks.begin(), sinks.end());
    const DensityMatrix a = evolve_noiseless(c).reduced(keep);
    const DensityMatrix b = evolve_noiseless(p).reduced(keep);
    EXPECT_LT(trace_distance(a, b), 1e-12);
  }
}

TEST(Lightcone, VdPairPruningPreservesPairState) {
  const Circuit c = real_amplitudes(3, 1, Entanglement::Linear, fixed_params(6));
  const Circuit two = tensor_two_copies(c);
  for (int i = 0; i < 3; ++i) {
    const Circuit p = lightcone(two, {i, 3 + i});
    EXPECT_LE(p.size(), two.size());
    const DensityMatrix a = evolve_noiseless(two).reduced({i, 3 + i});
    const DensityMatrix b = evolve_noiseless(p).reduced({i, 3 + i});
    EXPECT_LT(trace_distance(a, b), 1e-12);
  }
  // linear chain: qubit 0 is only reached by the first CNOT's control
  EXPECT_LT(lightcone(two, {0, 3}).size(), two.size());
}

TEST(Dag, IndependentGatesShareLayerZero) {
  Circuit c(2);
  c.push(Gate::ry(0, 0.1)).push(Gate::ry(1, 0.1));
  const Dag d = build_dag(c);
  EXPECT_TRUE(d.preds[0].empty() && d.preds[1].empty());
  EXPECT_EQ(d.layer[0], 0u);
  EXPECT_EQ(d.layer[1], 0u);
}

TEST(Dag, ChainedCnots) {
  Circuit c(3);
  c.push(Gate::cnot(0, 1)).push(Gate::cnot(1, 2));
  const Dag d = build_dag(c);
  EXPECT_TRUE(d.has_edge(0, 1));
  EXPECT_EQ(d.layer[0], 0u);
  EXPECT_EQ(d.layer[1], 1u);
}

TEST(Dag, DisjointCnots) {
  Circuit c(4);
  c.push(Gate::cnot(0, 1)).push(Gate::cnot(2, 3));
  const Dag d = build_dag(c);
  EXPECT_FALSE(d.has_edge(0, 1));
  EXPECT_EQ(d.layer[0], 0u);
  EXPECT_EQ(d.layer[1], 0u);
}

TEST(Dag, GatesSharingQubitNeverShareLayer) {
  std::mt19937_64 rng(9);
  const Circuit c = random_circuit(5, 60, rng);
  const Dag d = build_dag(c);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      bool share = false;
      for (int k = 0; k < c[i].arity(); ++k) share = share || c[j].acts_on(c[i].qubit(k));
      if (share) EXPECT_NE(d.layer[i], d.layer[j]);
    }
}

TEST(CircuitText, RoundTripIsExact) {
  std::mt19937_64 rng(21);
  Circuit c = random_circuit(4, 30, rng);
  c.push(Gate::unitary(0, 2, mat::kron(mat::ry(0.3), mat::rz(1.1)) * mat::cnot(), "diag"));
  c.push(Gate::measure(1));
  c.set_name("sample");
  const Circuit back = from_text(to_text(c));
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.name(), "sample");
}

TEST(CircuitText, ReportsLineNumbers) {
  try {
    from_text("qubits 2\nCNOT 0,1\nRY 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(from_text("CNOT 0,1\n"), Error);
  EXPECT_THROW(from_text("qubits 2\nFOO 0\n"), Error);
}

TEST(RealAmplitudes, ThreeQubitCircular) {
  const Circuit c = real_amplitudes(3, 2, Entanglement::Circular, fixed_params(9));
  EXPECT_EQ(RealAmplitudes(3, 2).num_parameters(), 9);
  EXPECT_EQ(c.count_if_kind(GateKind::CNOT), 6u);
  EXPECT_EQ(c.count_if_kind(GateKind::RY), 9u);
  // wrap CNOT first in each entangling layer
  EXPECT_EQ(c[3].qubit(0), 2);
  EXPECT_EQ(c[3].qubit(1), 0);
}

TEST(RealAmplitudes, TwoQubitRingDeduplicates) {
  const Circuit c = real_amplitudes(2, 1, Entanglement::Circular, fixed_params(4));
  EXPECT_EQ(c.count_if_kind(GateKind::CNOT), 1u);
}

TEST(RealAmplitudes, ZeroRepsIsProduct) {
  const Circuit c = real_amplitudes(4, 0, Entanglement::Circular, fixed_params(4));
  EXPECT_EQ(c.count_if_kind(GateKind::CNOT), 0u);
}
