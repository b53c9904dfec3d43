#pragma once

#include <cmath>
#include <vector>

#include "vdcut/error.hpp"
#include "vdcut/kernel.hpp"
#include "vdcut/linalg.hpp"

namespace vdcut {

/// Superoperators act on the vectorized density matrix. For k qubits the local
/// index is (row bits of q0..q_{k-1}, column bits of q0..q_{k-1}), most
/// significant first, so a unitary U maps to kron(U, conj(U)).
namespace superop {

inline MatX from_unitary(const MatX& u) { return mat::kron(u, MatX(u.conjugate())); }

inline MatX identity(int k) { return MatX::Identity(std::int64_t{1} << (2 * k), std::int64_t{1} << (2 * k)); }

/// rho -> (1 - lambda) rho + lambda Tr_q(rho) ⊗ I / 2^k
inline MatX depolarizing(int k, double lambda) {
  require(lambda >= 0.0 && lambda <= 1.0 + 1e-15, "depolarizing rate must lie in [0,1]");
  const std::int64_t d = std::int64_t{1} << k;
  MatX s = (1.0 - lambda) * identity(k);
  for (std::int64_t a = 0; a < d; ++a)
    for (std::int64_t b = 0; b < d; ++b) s(a * d + a, b * d + b) += lambda / static_cast<double>(d);
  return s;
}

/// Zero-temperature thermal relaxation for duration `t`: amplitude damping with
/// gamma = 1 - exp(-t/T1) and total coherence decay exp(-t/T2).
inline MatX thermal_relaxation(double t, double t1, double t2) {
  require(t >= 0.0, "duration must be non-negative");
  require(t1 > 0.0 && t2 > 0.0 && t2 <= 2.0 * t1 * (1.0 + 1e-12), "relaxation times must satisfy 0 < T2 <= 2 T1");
  const double gamma = 1.0 - std::exp(-t / t1);
  const double coh = std::exp(-t / t2);
  MatX s = MatX::Zero(4, 4);
  s(0, 0) = 1.0;
  s(0, 3) = gamma;
  s(3, 3) = 1.0 - gamma;
  s(1, 1) = coh;
  s(2, 2) = coh;
  return s;
}

/// Two one-qubit superoperators (a on the first qubit) as one two-qubit superoperator.
inline MatX tensor(const MatX& a, const MatX& b) {
  MatX s = MatX::Zero(16, 16);
  for (int ra = 0; ra < 2; ++ra)
    for (int ca = 0; ca < 2; ++ca)
      for (int rb = 0; rb < 2; ++rb)
        for (int cb = 0; cb < 2; ++cb)
          for (int ra2 = 0; ra2 < 2; ++ra2)
            for (int ca2 = 0; ca2 < 2; ++ca2)
              for (int rb2 = 0; rb2 < 2; ++rb2)
                for (int cb2 = 0; cb2 < 2; ++cb2) {
                  const cplx va = a(ra * 2 + ca, ra2 * 2 + ca2);
                  const cplx vb = b(rb * 2 + cb, rb2 * 2 + cb2);
                  if (va == cplx(0.0, 0.0) || vb == cplx(0.0, 0.0)) continue;
                  s(((ra * 2 + rb) * 4) + ca * 2 + cb, ((ra2 * 2 + rb2) * 4) + ca2 * 2 + cb2) = va * vb;
                }
  return s;
}

}  // namespace superop

/// Dense 2^n x 2^n density matrix stored row-major; vectorized index = (row << n) | col.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-10;

  DensityMatrix() = default;

  /// |0...0><0...0|
  explicit DensityMatrix(int n) : n_(n), data_(std::size_t{1} << (2 * n), cplx(0.0, 0.0)) {
    require(n >= 0 && n <= 15, "density matrix width out of range");
    data_[0] = 1.0;
  }

  static DensityMatrix from_matrix(const MatX& m) {
    const auto d = m.rows();
    int n = 0;
    while ((std::int64_t{1} << n) < d) ++n;
    require((std::int64_t{1} << n) == d && m.cols() == d, "density matrix must be 2^n x 2^n");
    DensityMatrix rho(n);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) rho.data_[static_cast<std::size_t>(r * d + c)] = m(r, c);
    return rho;
  }

  static DensityMatrix from_pure(const std::vector<cplx>& amps) {
    int n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    require((std::size_t{1} << n) == amps.size(), "state vector size must be 2^n");
    DensityMatrix rho(n);
    const std::size_t d = amps.size();
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) rho.data_[r * d + c] = amps[r] * std::conj(amps[c]);
    return rho;
  }

  int width() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  cplx operator()(std::size_t r, std::size_t c) const { return data_[r * dim() + c]; }

  MatX to_matrix() const {
    const auto d = static_cast<Eigen::Index>(dim());
    MatX m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) m(r, c) = data_[static_cast<std::size_t>(r * d + c)];
    return m;
  }

  void apply_unitary(const std::vector<int>& qubits, const MatX& u) { apply_superop(qubits, superop::from_unitary(u)); }

  /// Applies a superoperator on `qubits` (see namespace superop for index layout).
  void apply_superop(const std::vector<int>& qubits, const MatX& s) { prepare(qubits, s).apply(data_, 2 * n_); }

  kernel::LocalOp prepare(const std::vector<int>& qubits, const MatX& s) const {
    std::vector<int> pos;
    pos.reserve(2 * qubits.size());
    for (int q : qubits) {
      require(q >= 0 && q < n_, "qubit out of range");
      pos.push_back(n_ + q);
    }
    for (int q : qubits) pos.push_back(q);
    return kernel::LocalOp(std::move(pos), s);
  }

  void apply_prepared(const kernel::LocalOp& op) { op.apply(data_, 2 * n_); }

  cplx trace() const {
    cplx t = 0;
    for (std::size_t i = 0; i < dim(); ++i) t += data_[i * dim() + i];
    return t;
  }

  double purity() const {
    // Tr(rho^2) = sum |rho_rc|^2 for Hermitian rho
    double s = 0;
    for (const auto& v : data_) s += std::norm(v);
    return s;
  }

  std::vector<double> diagonal() const {
    std::vector<double> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = data_[i * dim() + i].real();
    return p;
  }

  /// Partial trace keeping `keep` (output qubit j = input qubit keep[j]).
  DensityMatrix reduced(const std::vector<int>& keep) const {
    const int m = static_cast<int>(keep.size());
    std::vector<bool> kept(static_cast<std::size_t>(n_), false);
    for (int q : keep) {
      require(q >= 0 && q < n_ && !kept[static_cast<std::size_t>(q)], "invalid qubit list for partial trace");
      kept[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < n_; ++q)
      if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);
    DensityMatrix out(m);
    out.data_[0] = 0.0;
    const std::size_t dm = std::size_t{1} << m;
    const std::size_t dt = std::size_t{1} << traced.size();
    auto expand = [&](std::size_t local, std::size_t env) {
      std::size_t idx = 0;
      for (int j = 0; j < m; ++j)
        if ((local >> j) & 1U) idx |= (std::size_t{1} << keep[static_cast<std::size_t>(j)]);
      for (std::size_t j = 0; j < traced.size(); ++j)
        if ((env >> j) & 1U) idx |= (std::size_t{1} << traced[j]);
      return idx;
    };
    for (std::size_t r = 0; r < dm; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        cplx acc = 0;
        for (std::size_t e = 0; e < dt; ++e) acc += (*this)(expand(r, e), expand(c, e));
        out.data_[r * dm + c] = acc;
      }
    return out;
  }

  /// Hermitian, unit trace and positive semidefinite within `tol`.
  bool is_valid(double tol = kTol) const {
    const MatX m = to_matrix();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(trace() - cplx(1.0, 0.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<MatX> es(m);
    return es.eigenvalues().minCoeff() >= -tol;
  }

  const std::vector<cplx>& raw() const { return data_; }
  std::vector<cplx>& raw() { return data_; }

 private:
  int n_ = 0;
  std::vector<cplx> data_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  // a occupies qubits 0..na-1, b occupies na..na+nb-1; index bit k = qubit k
  const int na = a.width(), nb = b.width();
  MatX m(static_cast<Eigen::Index>(a.dim() * b.dim()), static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t r = 0; r < a.dim() * b.dim(); ++r)
    for (std::size_t c = 0; c < a.dim() * b.dim(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          a(r & (a.dim() - 1), c & (a.dim() - 1)) * b(r >> na, c >> na);
  (void)nb;
  return DensityMatrix::from_matrix(m);
}

inline double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.width() == b.width(), "width mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) s += std::norm(a.raw()[i] - b.raw()[i]);
  return std::sqrt(s);
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.width() == b.width(), "width mismatch");
  const MatX diff = a.to_matrix() - b.to_matrix();
  Eigen::SelfAdjointEigenSolver<MatX> es(diff);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace vdcut
