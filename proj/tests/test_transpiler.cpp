#include <gtest/gtest.h>

#include <random>

#include "vdcut/ansatz.hpp"
#include "vdcut/crosstalk.hpp"
#include "vdcut/decompose.hpp"
#include "vdcut/routing.hpp"
#include "vdcut/simulator.hpp"
#include "vdcut/statevector.hpp"
#include "vdcut/vdistill.hpp"

using namespace vdcut;

namespace {

Mat2 random_u2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = cplx(g(rng), g(rng));
  return Eigen::HouseholderQR<Eigen::Matrix2cd>(a).householderQ();
}

Mat4 random_u4(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
  return Eigen::HouseholderQR<Mat4>(a).householderQ();
}

Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_int_distribution<int> q(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 7);
  for (int i = 0; i < gates; ++i) {
    const int a = q(rng);
    int b = q(rng);
    while (b == a) b = q(rng);
    switch (kind(rng)) {
      case 0: c.push(Gate::ry(a, ang(rng))); break;
      case 1: c.push(Gate::rz(a, ang(rng))); break;
      case 2: c.push(Gate::h(a)); break;
      case 3: c.push(Gate::x(a)); break;
      case 4: c.push(Gate::cnot(a, b)); break;
      case 5: c.push(Gate::rzz(a, b, ang(rng))); break;
      case 6: c.push(Gate::swap(a, b)); break;
      default: c.push(Gate::unitary(a, b, random_u4(rng))); break;
    }
  }
  return c;
}

Circuit with_measures(Circuit c) {
  for (int q = 0; q < c.width(); ++q) c.push(Gate::measure(q));
  return c;
}

double tv(const Distribution& a, const Distribution& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2;
}

}  // namespace

TEST(Kak, CanonicalGateIsUnitaryAndMatchesExponential) {
  const double a = 0.3, b = -0.2, c = 0.11;
  const Mat4 xx = mat::kron(mat::pauli_x(), mat::pauli_x());
  const Mat4 yy = mat::kron(mat::pauli_y(), mat::pauli_y());
  const Mat4 zz = mat::kron(mat::pauli_z(), mat::pauli_z());
  Eigen::ComplexEigenSolver<Mat4> es(kI * (a * xx + b * yy + c * zz));
  const Mat4 expm = es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() * es.eigenvectors().inverse();
  EXPECT_LT((kak::canonical(a, b, c) - expm).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Kak, ReconstructsRandomUnitaries) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const Mat4 u = random_u4(rng);
    const kak::Decomposition d = kak::decompose(u);
    EXPECT_LT((d.reconstruct() - u).cwiseAbs().maxCoeff(), 1e-9) << "trial " << t;
    for (double x : {d.a, d.b, d.c}) {
      EXPECT_GT(x, -kPi / 4 - 1e-12);
      EXPECT_LE(x, kPi / 4 + 1e-12);
    }
  }
}

TEST(Kak, HandlesDegenerateSpectra) {
  std::mt19937_64 rng(11);
  const std::vector<Mat4> cores{Mat4::Identity(), mat::cnot(), mat::swap(), mat::rzz(0.4),
                                DiagonalizingGate::standard().unitary, kak::canonical(kPi / 4, kPi / 4, 0)};
  for (const Mat4& core : cores)
    for (int t = 0; t < 10; ++t) {
      const Mat4 u = mat::kron(random_u2(rng), random_u2(rng)) * core * mat::kron(random_u2(rng), random_u2(rng));
      EXPECT_LT((kak::decompose(u).reconstruct() - u).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Templates, EachClassMatchesCanonicalGate) {
  const std::vector<std::array<double, 3>> coords{{0, 0, 0},       {kPi / 4, 0, 0}, {-kPi / 4, 0, 0}, {0, kPi / 4, 0},
                                                  {0, 0, kPi / 4}, {0.3, 0.1, 0},   {0.3, 0, 0.2},    {0, 0.25, -0.1},
                                                  {0.1, 0, 0},     {0.3, -0.2, 0.1}, {kPi / 4, kPi / 4, kPi / 4}};
  for (const auto& [a, b, c] : coords) {
    const auto steps = synth::canonical_template(a, b, c);
    EXPECT_LT(mat::phase_distance(synth::product(steps), kak::canonical(a, b, c)), 1e-10) << a << " " << b << " " << c;
  }
}

TEST(DecomposeToBasis, SwapIsThreeCnots) {
  const Circuit c = decompose_to_basis(append(Circuit(2), Gate::swap(0, 1)));
  EXPECT_EQ(cnot_count(c), 3u);
  EXPECT_EQ(c.size(), 3u);
}

TEST(DecomposeToBasis, RzzIsTwoCnotsAndOneRz) {
  const Circuit c = decompose_to_basis(append(Circuit(2), Gate::rzz(0, 1, 0.7)));
  EXPECT_EQ(cnot_count(c), 2u);
  EXPECT_EQ(c.count_if_kind(GateKind::RZ), 1u);
  EXPECT_LT(mat::phase_distance(circuit_unitary(c), MatX(mat::rzz(0.7))), 1e-12);
}

TEST(DecomposeToBasis, DiagonalizingGateUsesTwoCnots) {
  const Mat4 b = DiagonalizingGate::standard().unitary;
  const Circuit c = decompose_to_basis(append(Circuit(2), Gate::unitary(0, 1, b)));
  EXPECT_LE(cnot_count(c), 2u);
  const Circuit ref = append(Circuit(2), Gate::unitary(0, 1, b));
  EXPECT_LT(mat::phase_distance(circuit_unitary(c), circuit_unitary(ref)), 1e-9);
}

TEST(DecomposeToBasis, RandomCircuitsAreEquivalentUpToPhase) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3;
    const Circuit c = random_circuit(n, 12, rng);
    const Circuit d = decompose_to_basis(c);
    for (const auto& g : d) EXPECT_TRUE(is_basis_kind(g.kind()));
    EXPECT_LT(mat::phase_distance(circuit_unitary(d), circuit_unitary(c)), 1e-9) << "trial " << t;
  }
}

TEST(DecomposeToBasis, GenericUnitaryNeedsAtMostThreeCnots) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Circuit d = decompose_to_basis(append(Circuit(2), Gate::unitary(1, 0, random_u4(rng))));
    EXPECT_LE(cnot_count(d), 3u);
  }
}

TEST(DecomposeToBasis, IsIdempotent) {
  std::mt19937_64 rng(9);
  const Circuit d = decompose_to_basis(random_circuit(3, 20, rng));
  EXPECT_EQ(decompose_to_basis(d), d);
}

TEST(DecomposeToBasis, TagsAreInherited) {
  const Circuit c = decompose_to_basis(append(Circuit(2), Gate::unitary(0, 1, DiagonalizingGate::standard().unitary, "diag")));
  for (const auto& g : c) EXPECT_EQ(g.tag(), "diag");
}

TEST(CnotCount, RealAmplitudesAndEmpty) {
  EXPECT_EQ(cnot_count(decompose_to_basis(real_amplitudes(3, 2, Entanglement::Circular, std::vector<double>(9, 0.3)))), 6u);
  EXPECT_EQ(cnot_count(Circuit(3)), 0u);
  EXPECT_THROW(cnot_count(append(Circuit(2), Gate::swap(0, 1))), Error);
}

TEST(CouplingMap, HeavyHexSizes) {
  EXPECT_EQ(CouplingMap::heavy_hex(7).size(), 127);
  EXPECT_EQ(CouplingMap::heavy_hex(7).edges().size(), 144u);
  EXPECT_EQ(CouplingMap::heavy_hex(3).size(), 23);
  const CouplingMap h = CouplingMap::heavy_hex(7);
  for (int q = 0; q < h.size(); ++q) EXPECT_LE(h.neighbors(q).size(), 3u);
}

TEST(CouplingMap, RejectsDisconnectedGraphs) {
  EXPECT_THROW(CouplingMap::custom(4, {{0, 1}, {2, 3}}), Error);
  EXPECT_THROW(CouplingMap::custom(2, {{0, 2}}), Error);
}

TEST(Route, FullyConnectedInsertsNoSwaps) {
  std::mt19937_64 rng(1);
  const Circuit c = random_circuit(5, 30, rng);
  const RoutedCircuit r = route(c, CouplingMap::fully_connected(5), 0);
  EXPECT_EQ(r.swaps, 0u);
  EXPECT_EQ(r.physical.count_if_kind(GateKind::SWAP), c.count_if_kind(GateKind::SWAP));
}

TEST(Route, DistanceTwoNeedsOneSwap) {
  const RoutedCircuit r = route(append(Circuit(3), Gate::cnot(0, 2)), CouplingMap::linear(3), 0);
  EXPECT_EQ(r.swaps, 1u);
  EXPECT_TRUE(respects_coupling(r.physical, CouplingMap::linear(3)));
}

TEST(Route, VdCircuitOnLinearMapNeedsAtMostThreeSwaps) {
  const Circuit orig = real_amplitudes(3, 2, Entanglement::Linear, std::vector<double>(6 + 3, 0.2));
  const CouplingMap line = CouplingMap::linear(6);
  const RoutedCircuit r = route(build_vd_circuit(orig), line, 0);
  EXPECT_TRUE(respects_coupling(r.physical, line));
  EXPECT_LE(r.swaps, 3u);
}

TEST(Route, ErrorsWhenDeviceTooSmall) { EXPECT_THROW(route(Circuit(4), CouplingMap::linear(3), 0), Error); }

TEST(Route, PreservesSemanticsAndLayoutConsistency) {
  std::mt19937_64 rng(21);
  const std::vector<CouplingMap> maps{CouplingMap::linear(4), CouplingMap::custom(4, {{0, 1}, {1, 2}, {1, 3}}),
                                      CouplingMap::linear(5), CouplingMap::heavy_hex(3)};
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 3;
    const Circuit c = random_circuit(n, 15, rng);
    const CouplingMap& map = maps[static_cast<std::size_t>(t) % maps.size()];
    if (map.size() > 10) continue;
    const RoutedCircuit r = route(with_measures(c), map, static_cast<std::uint64_t>(t));
    EXPECT_TRUE(respects_coupling(r.physical, map));
    std::vector<int> layout = r.initial_layout;
    for (const auto& g : r.physical) {
      if (g.kind() != GateKind::SWAP || g.tag() != "route") continue;
      for (int& p : layout) p = p == g.qubit(0) ? g.qubit(1) : (p == g.qubit(1) ? g.qubit(0) : p);
    }
    EXPECT_EQ(layout, r.final_layout);
    const Distribution want = run_exact(with_measures(c), NoiseModel::ideal());
    const Distribution got = run_exact(r.physical, NoiseModel::ideal());
    EXPECT_LT(tv(want, got), 1e-10) << "trial " << t;
  }
}

TEST(Route, HeavyHexRegionRouting) {
  const Circuit orig = real_amplitudes(4, 2, Entanglement::Circular, std::vector<double>(12, 0.4));
  const Circuit vd = build_vd_circuit(orig);
  const RegionRouting rr = route_in_region(vd, CouplingMap::heavy_hex(3), 0);
  EXPECT_EQ(rr.routed.physical.width(), 8);
  EXPECT_TRUE(respects_coupling(rr.routed.physical, rr.region_map));
  const CouplingMap hh = CouplingMap::heavy_hex(3);
  for (const auto& [a, b] : rr.region_map.edges())
    EXPECT_TRUE(hh.is_edge(rr.region[static_cast<std::size_t>(a)], rr.region[static_cast<std::size_t>(b)]));
  const Distribution want = run_exact(vd, NoiseModel::ideal());
  const Distribution got = run_exact(rr.routed.physical, NoiseModel::ideal());
  EXPECT_LT(tv(want, got), 1e-10);
}

TEST(Route, IsDeterministic) {
  std::mt19937_64 rng(2);
  const Circuit c = random_circuit(6, 40, rng);
  const CouplingMap h = CouplingMap::heavy_hex(3);
  EXPECT_EQ(route(c, h, 5).physical, route(c, h, 5).physical);
}
