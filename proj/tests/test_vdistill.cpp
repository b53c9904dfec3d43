#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "vdcut/ansatz.hpp"
#include "vdcut/simulator.hpp"
#include "vdcut/vdistill.hpp"

using namespace vdcut;
using namespace vdcut::testing;

namespace {

PauliObservable single(int n, const std::string& s, double coeff = 1.0) { return PauliObservable(n).add(coeff, s); }

double tr_o_rho2(const DensityMatrix& rho, const PauliObservable& obs) {
  const MatX r = rho.to_matrix();
  return (observable_matrix(obs) * r * r).trace().real();
}

/// Tr(Za rho Zb rho), the cross term the per-pair measurement also sees.
double tr_cross(const DensityMatrix& rho, int a, int b) {
  const int n = rho.width();
  const MatX r = rho.to_matrix();
  std::string sa(static_cast<std::size_t>(n), 'I'), sb = sa;
  sa[static_cast<std::size_t>(a)] = 'Z';
  sb[static_cast<std::size_t>(b)] = 'Z';
  return (observable_matrix(single(n, sa)) * r * observable_matrix(single(n, sb)) * r).trace().real();
}

NoiseModel relaxing_one_qubit(double p_excited) {
  NoiseModel nm;
  nm.p1 = nm.p2 = 0;
  nm.duration2 = 0;
  nm.duration1 = nm.t1 * std::log(1.0 / p_excited);
  nm.readout = symmetric_confusion(0.0);
  return nm;
}

}  // namespace

TEST(DiagonalizingGate, DiagonalizesSwap) {
  const DiagonalizingGate b = DiagonalizingGate::standard();
  EXPECT_TRUE(mat::is_unitary(b.unitary, 1e-14));
  EXPECT_TRUE(b.valid());
  const Mat4 d = b.unitary * mat::swap() * b.unitary.adjoint();
  int minus = 0;
  for (int k = 0; k < 4; ++k) minus += d(k, k).real() < 0;
  EXPECT_EQ(minus, 1);
  EXPECT_EQ(b.sign(1, 0), -1);
  EXPECT_EQ(b.sign(0, 1), 1);
  DiagonalizingGate wrong = b;
  wrong.singlet_index = 1;
  EXPECT_FALSE(wrong.valid());
}

TEST(BuildVdCircuit, SingleQubit) {
  const Circuit vd = build_vd_circuit(append(Circuit(1), Gate::ry(0, 0.3)));
  EXPECT_EQ(vd.width(), 2);
  EXPECT_EQ(vd.count_tag("diag"), 1u);
  EXPECT_EQ(vd.count_if_kind(GateKind::Measure), 2u);
}

TEST(BuildVdCircuit, ThreeQubitAnsatzCounts) {
  const Circuit orig = real_amplitudes(3, 2, Entanglement::Circular, std::vector<double>(9, 0.5));
  const Circuit vd = build_vd_circuit(orig);
  EXPECT_EQ(vd.width(), 6);
  EXPECT_EQ(vd.count_tag("diag"), 3u);
  EXPECT_EQ(vd.size(), 2 * orig.size() + 3 + 6);
  for (std::size_t i = 2 * orig.size(), k = 0; k < 3; ++i, ++k) {
    EXPECT_EQ(vd[i].qubit(0), static_cast<int>(k));
    EXPECT_EQ(vd[i].qubit(1), static_cast<int>(k) + 3);
  }
}

TEST(BuildVdCircuit, RejectsMeasuredInput) {
  EXPECT_THROW(build_vd_circuit(append(Circuit(1), Gate::measure(0))), Error);
}

TEST(Oracle, PureStateIsUnchanged) {
  const Circuit c = real_amplitudes(2, 1, Entanglement::Circular, {0.3, 1.1, -0.4, 0.9});
  const DensityMatrix rho = evolve_noiseless(c);
  const PauliObservable z0 = single(2, "ZI");
  const double base = oracle_mitigated_expectation(rho, z0, 1);
  for (int m = 2; m <= 5; ++m) EXPECT_NEAR(oracle_mitigated_expectation(rho, z0, m), base, 1e-12);
}

TEST(Oracle, HandEvaluatedMixture) {
  MatX r = MatX::Zero(2, 2);
  r(0, 0) = 0.8;
  r(1, 1) = 0.2;
  const DensityMatrix rho = DensityMatrix::from_matrix(r);
  EXPECT_NEAR(oracle_mitigated_expectation(rho, single(1, "Z"), 2), 0.6 / 0.68, 1e-14);
  double prev = oracle_mitigated_expectation(rho, single(1, "Z"), 1);
  for (int m = 2; m <= 40; ++m) {
    const double v = oracle_mitigated_expectation(rho, single(1, "Z"), m);
    if (m <= 12) EXPECT_GT(v, prev);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(Oracle, MatchesEigendecomposition) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density(2, rng);
    const Spectrum s = spectrum(rho);
    const MatX o = observable_matrix(single(2, "ZZ"));
    for (int m = 1; m <= 4; ++m) {
      double num = 0, den = 0;
      for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        const double w = std::pow(s.eigenvalues(k), m);
        num += w * (s.eigenvectors.col(k).adjoint() * o * s.eigenvectors.col(k))(0, 0).real();
        den += w;
      }
      EXPECT_NEAR(oracle_mitigated_expectation(rho, single(2, "ZZ"), m), num / den, 1e-10);
    }
  }
}

TEST(Oracle, DegenerateTraceIsAnError) {
  MatX r = MatX::Identity(4, 4) / 4.0;
  EXPECT_THROW(oracle_mitigated_expectation(DensityMatrix::from_matrix(r), single(2, "ZI"), 40), Error);
  EXPECT_THROW(oracle_mitigated_expectation(DensityMatrix::from_matrix(r), single(2, "ZI"), 0), Error);
}

TEST(Spectrum, DescendingAndNormalized) {
  std::mt19937_64 rng(8);
  const Spectrum s = spectrum(density_with_spectrum({0.1, 0.6, 0.2, 0.1}, rng));
  EXPECT_NEAR(s.eigenvalues(0), 0.6, 1e-12);
  EXPECT_NEAR(s.eigenvalues.sum(), 1.0, 1e-12);
  for (Eigen::Index k = 1; k < 4; ++k) EXPECT_LE(s.eigenvalues(k), s.eigenvalues(k - 1));
}

TEST(Estimator, DenominatorAndSingleZAreExact) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const DensityMatrix rho = random_density(n, rng);
    const Distribution d = vd_outcome_distribution(rho);
    for (int q = 0; q < n; ++q) {
      std::string s(static_cast<std::size_t>(n), 'I');
      s[static_cast<std::size_t>(q)] = 'Z';
      const VDEstimate e = estimate_from_distribution(d, single(n, s));
      EXPECT_NEAR(e.denominator, rho.purity(), 1e-10);
      EXPECT_NEAR(e.numerator, tr_o_rho2(rho, single(n, s)), 1e-10);
    }
  }
}

TEST(Estimator, ExactOnDiagonalStates) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    const DensityMatrix rho = random_diagonal_density(n, rng);
    const Distribution d = vd_outcome_distribution(rho);
    for (const auto& s : z_strings(n)) {
      const VDEstimate e = estimate_from_distribution(d, single(n, s));
      EXPECT_NEAR(e.numerator, tr_o_rho2(rho, single(n, s)), 1e-10) << s;
    }
  }
}

// Per-pair measurement after B cannot resolve Tr(ZaZb rho^2) on coherent states; the weights
// return the symmetrized value (Tr(ZaZb rho^2) + Tr(Za rho Zb rho)) / 2 instead.
TEST(Estimator, TwoBodyTermsGiveSymmetrizedValue) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 2;
    const DensityMatrix rho = random_density(n, rng);
    const Distribution d = vd_outcome_distribution(rho);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(a)] = s[static_cast<std::size_t>(b)] = 'Z';
        const double want = 0.5 * (tr_o_rho2(rho, single(n, s)) + tr_cross(rho, a, b));
        EXPECT_NEAR(estimate_from_distribution(d, single(n, s)).numerator, want, 1e-10);
      }
  }
}

TEST(Estimator, PurityBound) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 3;
    const double den = estimate_from_distribution(vd_outcome_distribution(random_density(n, rng)), single(n, std::string(static_cast<std::size_t>(n), 'I'))).denominator;
    EXPECT_GE(den, 1.0 / std::pow(2.0, n) - 1e-12);
    EXPECT_LE(den, 1.0 + 1e-12);
  }
}

TEST(Estimator, CircuitOutcomesMatchStateOutcomes) {
  const Circuit orig = real_amplitudes(2, 1, Entanglement::Circular, {0.3, 1.1, -0.4, 0.9});
  const DensityMatrix rho = evolve(orig, NoiseModel::preset("basic"));
  NoiseModel clean = NoiseModel::preset("basic");
  clean.ideal_tags.insert("diag");
  clean.readout = symmetric_confusion(0.0);
  const Distribution via_circuit = run_exact(build_vd_circuit(orig), clean);
  EXPECT_LT(tv_distance(via_circuit, vd_outcome_distribution(rho)), 1e-12);
}

// Red by construction for entangled states: the ZZ terms carry the bias characterized above.
TEST(Estimator, NoiselessPureStateRecoversIdeal) {
  const Circuit orig = real_amplitudes(3, 2, Entanglement::Circular, {0.3, 1.1, -0.4, 0.9, 0.2, -1.3, 0.5, 0.7, -0.2});
  PauliObservable h(3);
  h.add(1.5, "III").add(-0.5, "ZZI").add(-0.5, "IZZ").add(-0.5, "ZIZ");
  const double ideal = expectation(evolve_noiseless(orig), h);
  const Distribution d = run_exact(build_vd_circuit(orig), NoiseModel::ideal());
  EXPECT_NEAR(estimate_from_distribution(d, h).value(), ideal, 1e-10);
  const VDEstimate sampled = estimate_from_counts(sample(d, 1000000, 99), h);
  const double se = std::abs(sampled.value()) * std::hypot(sampled.numerator_se / sampled.numerator,
                                                           sampled.denominator_se / sampled.denominator);
  EXPECT_LT(std::abs(sampled.value() - ideal), 5 * se + 1e-12);
}

TEST(Estimator, RelaxedQubitMatchesOracle) {
  const Circuit orig = append(Circuit(1), Gate::x(0));
  const NoiseModel nm = relaxing_one_qubit(0.2);
  const DensityMatrix rho = evolve(orig, nm);
  EXPECT_NEAR(rho(0, 0).real(), 0.8, 1e-12);
  const Distribution d = run_exact(build_vd_circuit(orig), nm);
  const VDEstimate e = estimate_from_counts(sample(d, 1000000, 5), single(1, "Z"));
  const double se = std::hypot(e.numerator_se / e.denominator, e.numerator * e.denominator_se / (e.denominator * e.denominator));
  EXPECT_NEAR(e.value(), 0.88235294117647056, 5 * se);
  EXPECT_NEAR(estimate_from_distribution(d, single(1, "Z")).value(), 0.6 / 0.68, 1e-12);
}

TEST(Estimator, RandomTwoQubitStateWithinFiveSigma) {
  std::mt19937_64 rng(31);
  const DensityMatrix rho = random_density(2, rng);
  const Distribution d = vd_outcome_distribution(rho);
  for (const std::string s : {"ZI", "IZ"}) {
    const VDEstimate e = estimate_from_counts(sample(d, 1000000, 17), single(2, s));
    const double se = std::hypot(e.numerator_se / e.denominator, e.numerator * e.denominator_se / (e.denominator * e.denominator));
    EXPECT_NEAR(e.value(), oracle_mitigated_expectation(rho, single(2, s), 2), 5 * se) << s;
  }
}

TEST(Estimator, SamplesAgreeWithExactWeighting) {
  std::mt19937_64 rng(41);
  const Distribution d = vd_outcome_distribution(random_density(2, rng));
  const PauliObservable o = single(2, "ZZ");
  const VDEstimate exact = estimate_from_distribution(d, o, 1000000);
  const VDEstimate e = estimate_from_counts(sample(d, 1000000, 3), o);
  EXPECT_NEAR(e.numerator, exact.numerator, 5 * exact.numerator_se);
  EXPECT_NEAR(e.denominator, exact.denominator, 5 * exact.denominator_se);
  EXPECT_NEAR(e.numerator_se, exact.numerator_se, 0.05 * exact.numerator_se);
}

TEST(Estimator, InsignificantDenominatorIsAnError) {
  VDEstimate e;
  e.numerator = 0.1;
  e.denominator = 0.01;
  e.denominator_se = 0.002;
  EXPECT_FALSE(e.significant());
  EXPECT_THROW(e.value(), InsignificantDenominator);
}

TEST(Estimator, RejectsNonDiagonalObservables) {
  const Distribution d = Distribution::uniform(2);
  EXPECT_THROW(estimate_from_distribution(d, single(1, "X")), Error);
}
