#include <gtest/gtest.h>

#include <random>

#include "vdcut/ansatz.hpp"
#include "vdcut/zne.hpp"

using namespace vdcut;

namespace {

Circuit vqe(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<double> theta(static_cast<std::size_t>(n * 3));
  for (double& t : theta) t = u(rng);
  return real_amplitudes(n, 2, Entanglement::Circular, theta);
}

}  // namespace

TEST(Fold, ScaleOneIsIdentity) {
  const Circuit vd = build_vd_circuit(vqe(2, 1));
  const Circuit f = fold_diagonalizing(vd, 1);
  ASSERT_EQ(f.size(), vd.size());
  for (std::size_t k = 0; k < vd.size(); ++k) EXPECT_TRUE(f[k] == vd[k]);
}

TEST(Fold, ScaleThreeIsGAdjointG) {
  const Circuit vd = build_vd_circuit(vqe(2, 1));
  const Circuit f = fold_diagonalizing(vd, 3);
  EXPECT_EQ(f.count_tag(tags::kDiag), 3 * vd.count_tag(tags::kDiag));
  EXPECT_EQ(f.size(), vd.size() + 2 * vd.count_tag(tags::kDiag));
  for (std::size_t k = 0; k + 2 < f.size(); ++k) {
    if (f[k].tag() != tags::kDiag || (k > 0 && f[k - 1].tag() == tags::kDiag && f[k - 1].qubits() == f[k].qubits())) continue;
    EXPECT_TRUE(f[k + 1] == f[k].adjoint());
    EXPECT_TRUE(f[k + 2] == f[k]);
  }
}

TEST(Fold, NoiselessSemanticsPreserved) {
  for (int n : {1, 2, 3}) {
    const Circuit vd = build_vd_circuit(vqe(n, 7 + n));
    const Distribution base = run_exact(vd, NoiseModel::ideal());
    for (int s : {3, 5, 7}) EXPECT_LT(tv_distance(run_exact(fold_diagonalizing(vd, s), NoiseModel::ideal()), base), 1e-10);
  }
}

TEST(Fold, RejectsEvenScaleAndMissingDiag) {
  const Circuit vd = build_vd_circuit(vqe(2, 1));
  EXPECT_THROW(fold_diagonalizing(vd, 2), Error);
  EXPECT_THROW(fold_diagonalizing(vd, 0), Error);
  EXPECT_THROW(fold_diagonalizing(vqe(2, 1), 3), Error);
}

TEST(Fold, OnlyDiagonalizingGatesAreFolded) {
  const Circuit vd = build_vd_circuit(vqe(3, 2));
  const Circuit f = fold_diagonalizing(vd, 5);
  EXPECT_EQ(f.size() - f.count_tag(tags::kDiag), vd.size() - vd.count_tag(tags::kDiag));
}

TEST(Fold, DecomposedCnotCountsStrictlyIncrease) {
  const Circuit vd = build_vd_circuit(vqe(4, 5));
  const auto device = CouplingMap::heavy_hex(3);
  std::size_t prev = 0;
  for (int s : {1, 3, 5}) {
    const std::size_t c = compile_for_device(fold_diagonalizing(vd, s), device).cnots;
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(Fold, PurityNonIncreasingUnderBasicNoise) {
  const Circuit vd = build_vd_circuit(vqe(3, 4)).without_measurements();
  const NoiseModel nm = NoiseModel::preset("basic");
  double prev = 1.0 + 1e-12;
  for (int s : {1, 3, 5, 7}) {
    const double p = evolve(fold_diagonalizing(vd, s), nm).purity();
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(Extrapolate, ExactLine) {
  EXPECT_NEAR(extrapolate_linear({{1, 0.9, 0}, {3, 0.7, 0}, {5, 0.5, 0}}), 1.0, 1e-12);
}

TEST(Extrapolate, ConstantData) {
  EXPECT_NEAR(extrapolate_linear({{1, -2.25, 0}, {3, -2.25, 0}, {5, -2.25, 0}}), -2.25, 1e-12);
}

TEST(Extrapolate, RandomSyntheticLines) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    std::vector<ScaledRun> runs;
    for (int s : {1, 3, 5, 7}) runs.push_back({s, a + b * s, 0});
    EXPECT_NEAR(extrapolate_linear(runs), a, 1e-12);
  }
}

TEST(Extrapolate, RejectsDegenerateInput) {
  EXPECT_THROW(extrapolate_linear({{1, 0.5, 0}}), Error);
  EXPECT_THROW(extrapolate_linear({{3, 0.5, 0}, {3, 0.6, 0}}), Error);
}

TEST(ZNE, NoiselessRunsAreFlat) {
  const Circuit c = vqe(2, 6);
  PauliObservable obs(2);
  obs.add(1.0, "ZI");
  const auto z = mitigated_expectation_zne(c, obs, NoiseModel::ideal(), CouplingMap::fully_connected(4), 0, 1);
  ASSERT_EQ(z.runs.size(), 3U);
  for (const auto& r : z.runs) EXPECT_NEAR(r.value, z.runs[0].value, 1e-10);
  EXPECT_NEAR(z.value, z.runs[0].value, 1e-10);
  EXPECT_LT(z.devices[0].cnots, z.devices[2].cnots);
}
