#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vdcut/circuit.hpp"
#include "vdcut/density_matrix.hpp"
#include "vdcut/distribution.hpp"
#include "vdcut/observable.hpp"

namespace vdcut {

/// Two-qubit rotation taking the SWAP eigenbasis to the computational basis.
/// Local index = 2*z + z' with z the copy-0 bit.
struct DiagonalizingGate {
  Mat4 unitary;
  int singlet_index = 2;  // outcome "10": copy-0 bit 1, copy-1 bit 0

  static DiagonalizingGate standard() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat4 b = Mat4::Zero();
    b(0, 0) = 1;
    b(1, 1) = s;  // (|01> + |10>)/sqrt2 -> |01>
    b(1, 2) = s;
    b(2, 1) = s;  // (|01> - |10>)/sqrt2 -> |10>
    b(2, 2) = -s;
    b(3, 3) = -1;
    return {b, 2};
  }

  /// SWAP eigenvalue carried by a pair outcome.
  int sign(int z, int zp) const { return (2 * z + zp) == singlet_index ? -1 : 1; }

  /// B S B^dagger is diagonal with a single -1 at the singlet outcome.
  bool valid(double tol = 1e-12) const {
    const Mat4 d = unitary * mat::swap() * unitary.adjoint();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const cplx want = r != c ? 0.0 : (r == singlet_index ? -1.0 : 1.0);
        if (std::abs(d(r, c) - want) > tol) return false;
      }
    return true;
  }
};

/// Two copies, one diagonalizing gate per pair (i, n+i), then all 2n measurements.
inline Circuit build_vd_circuit(const Circuit& original, const DiagonalizingGate& b = DiagonalizingGate::standard()) {
  require(!original.has_measurements(), "build_vd_circuit: original must not contain measurements");
  const int n = original.width();
  Circuit out = tensor_two_copies(original);
  out.set_name(original.name().empty() ? "vd" : original.name() + "-vd");
  for (int i = 0; i < n; ++i) out.push(Gate::unitary(i, n + i, b.unitary, std::string(tags::kDiag)));
  for (int q = 0; q < 2 * n; ++q) out.push(Gate::measure(q));
  return out;
}

/// Exact outcome distribution of the VD measurement on rho ⊗ rho.
inline Distribution vd_outcome_distribution(const DensityMatrix& rho,
                                            const DiagonalizingGate& b = DiagonalizingGate::standard()) {
  const int n = rho.width();
  DensityMatrix two = tensor(rho, rho);
  const MatX s = superop::from_unitary(MatX(b.unitary));
  for (int i = 0; i < n; ++i) two.apply_superop({i, n + i}, s);
  std::vector<double> p = two.diagonal();
  for (double& v : p) v = std::max(v, 0.0);
  return Distribution::normalized(2 * n, std::move(p));
}

/// Eigen-decomposition of rho, eigenvalues in descending order.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  MatX eigenvectors;  // column k belongs to eigenvalues(k)
};

inline Spectrum spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<MatX> es(rho.to_matrix());
  const auto d = es.eigenvalues().size();
  Spectrum s{Eigen::VectorXd(d), MatX(d, d)};
  for (Eigen::Index k = 0; k < d; ++k) {
    s.eigenvalues(k) = es.eigenvalues()(d - 1 - k);
    s.eigenvectors.col(k) = es.eigenvectors().col(d - 1 - k);
  }
  return s;
}

/// Tr(O rho^M) / Tr(rho^M) with the matrix power formed by repeated products.
inline double oracle_mitigated_expectation(const DensityMatrix& rho, const PauliObservable& obs, int m) {
  require(m >= 1, "oracle: M must be >= 1");
  obs.check_width(rho.width());
  const MatX r = rho.to_matrix();
  MatX p = r;
  for (int k = 1; k < m; ++k) p = p * r;
  const double den = p.trace().real();
  if (den < 1e-14) throw Error("oracle: Tr(rho^M) is degenerate");
  return (observable_matrix(obs) * p).trace().real() / den;
}

struct VDEstimate {
  double numerator = 0;
  double denominator = 0;
  double numerator_se = 0;
  double denominator_se = 0;
  std::uint64_t shots = 0;  // 0 for exact (distribution-weighted) estimates

  // one shot carries no variance estimate
  bool significant() const {
    return shots != 1 && std::abs(denominator) >= 10 * denominator_se && denominator != 0.0;
  }

  double value() const {
    if (!significant())
      throw InsignificantDenominator("VD denominator " + std::to_string(denominator) + " is within 10 standard errors (" +
                                     std::to_string(denominator_se) + ") of zero");
    return numerator / denominator;
  }
};

namespace vd_detail {

/// Per-outcome weights for the pinched estimator: pair k contributes
/// s_k * (1/2)((-1)^{z_k} + (-1)^{z'_k}) when k is in the Z-string and s_k otherwise.
struct Weights {
  int n;
  std::vector<std::uint64_t> masks;
  std::vector<double> coeffs;
  int singlet;

  Weights(int n_, const PauliObservable& obs, const DiagonalizingGate& b) : n(n_), singlet(b.singlet_index) {
    obs.check_width(n);
    require(obs.is_diagonal(), "VD estimation supports only I/Z observables");
    for (const auto& t : obs.terms()) {
      masks.push_back(z_mask(t.paulis));
      coeffs.push_back(t.coeff);
    }
  }

  std::uint64_t singlet_mask(std::uint64_t z, std::uint64_t zp) const {
    const std::uint64_t low = (std::uint64_t{1} << n) - 1;
    switch (singlet) {
      case 0: return ~z & ~zp & low;
      case 1: return ~z & zp & low;
      case 2: return z & ~zp & low;
      default: return z & zp & low;
    }
  }

  double denominator(std::uint64_t x) const {
    const std::uint64_t z = x & ((std::uint64_t{1} << n) - 1), zp = x >> n;
    return (std::popcount(singlet_mask(z, zp)) & 1) ? -1.0 : 1.0;
  }

  double numerator(std::uint64_t x) const {
    const std::uint64_t low = (std::uint64_t{1} << n) - 1;
    const std::uint64_t z = x & low, zp = x >> n;
    const std::uint64_t sing = singlet_mask(z, zp);
    double w = 0;
    for (std::size_t t = 0; t < masks.size(); ++t) {
      const std::uint64_t m = masks[t];
      if ((z ^ zp) & m) continue;  // a mixed pair inside the string averages to zero
      const int parity = std::popcount(z & m) + std::popcount(sing & ~m);
      w += (parity & 1) ? -coeffs[t] : coeffs[t];
    }
    return w;
  }
};

}  // namespace vd_detail

/// Shot-averaged VD estimate from counts over the 2n measured bits.
inline VDEstimate estimate_from_counts(const Counts& counts, const PauliObservable& obs,
                                       const DiagonalizingGate& b = DiagonalizingGate::standard()) {
  require(counts.width % 2 == 0, "VD counts must cover 2n bits");
  require(counts.shots > 0, "VD counts are empty");
  const vd_detail::Weights w(counts.width / 2, obs, b);
  double sn = 0, sd = 0, snn = 0, sdd = 0;
  for (std::uint64_t x = 0; x < counts.hist.size(); ++x) {
    const auto k = static_cast<double>(counts.hist[x]);
    if (k == 0) continue;
    const double wn = w.numerator(x), wd = w.denominator(x);
    sn += k * wn;
    sd += k * wd;
    snn += k * wn * wn;
    sdd += k * wd * wd;
  }
  const auto ns = static_cast<double>(counts.shots);
  VDEstimate e;
  e.shots = counts.shots;
  e.numerator = sn / ns;
  e.denominator = sd / ns;
  const double vn = std::max(0.0, snn / ns - e.numerator * e.numerator);
  const double vd = std::max(0.0, sdd / ns - e.denominator * e.denominator);
  e.numerator_se = ns > 1 ? std::sqrt(vn / (ns - 1)) : 0.0;
  e.denominator_se = ns > 1 ? std::sqrt(vd / (ns - 1)) : 0.0;
  return e;
}

/// Same weights evaluated exactly over a distribution. When `shots` > 0 the
/// standard errors are those a sample of that size would carry.
inline VDEstimate estimate_from_distribution(const Distribution& dist, const PauliObservable& obs,
                                             std::uint64_t shots = 0,
                                             const DiagonalizingGate& b = DiagonalizingGate::standard()) {
  require(dist.width() % 2 == 0, "VD distribution must cover 2n bits");
  const vd_detail::Weights w(dist.width() / 2, obs, b);
  double sn = 0, sd = 0, snn = 0, sdd = 0;
  for (std::uint64_t x = 0; x < dist.size(); ++x) {
    const double p = dist[x];
    if (p == 0) continue;
    const double wn = w.numerator(x), wd = w.denominator(x);
    sn += p * wn;
    sd += p * wd;
    snn += p * wn * wn;
    sdd += p * wd * wd;
  }
  VDEstimate e;
  e.shots = shots;
  e.numerator = sn;
  e.denominator = sd;
  if (shots > 0) {
    const auto ns = static_cast<double>(shots);
    e.numerator_se = std::sqrt(std::max(0.0, snn - sn * sn) / ns);
    e.denominator_se = std::sqrt(std::max(0.0, sdd - sd * sd) / ns);
  }
  return e;
}

}  // namespace vdcut
