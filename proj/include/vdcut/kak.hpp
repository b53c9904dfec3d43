#pragma once

// Two-qubit canonical (Cartan) decomposition
//   U = phase * (A1 ⊗ B1) * exp(i(a XX + b YY + c ZZ)) * (A2 ⊗ B2)
// computed in the magic basis, plus CNOT templates for each interaction class.

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vdcut/error.hpp"
#include "vdcut/linalg.hpp"

namespace vdcut::kak {

inline Mat4 magic() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat4 q;
  q << 1, 0, 0, kI, 0, kI, 1, 0, 0, kI, -1, 0, 1, 0, 0, -kI;
  return q * s;
}

inline Mat4 canonical(double a, double b, double c) {
  // magic-basis diagonal of exp(i(aXX + bYY + cZZ))
  const Mat4 q = magic();
  Eigen::Vector4cd d;
  d << std::exp(kI * (a - b + c)), std::exp(kI * (a + b - c)), std::exp(kI * (-a - b - c)), std::exp(kI * (-a + b + c));
  return q * d.asDiagonal() * q.adjoint();
}

struct LocalPair {
  Mat2 a = Mat2::Identity();  // most significant qubit
  Mat2 b = Mat2::Identity();
  Mat4 matrix() const { return mat::kron(a, b); }
};

/// Splits a 4x4 local unitary into a ⊗ b (up to phase, returned separately).
inline LocalPair factor_local(const Mat4& l, cplx* phase = nullptr) {
  int bi = 0, bj = 0;
  double best = -1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double nrm = l.block<2, 2>(2 * i, 2 * j).norm();
      if (nrm > best) best = nrm, bi = i, bj = j;
    }
  Mat2 b = l.block<2, 2>(2 * bi, 2 * bj);
  b /= std::sqrt(b.determinant());
  Mat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = (b.adjoint() * l.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
  const cplx det = a.determinant();
  const cplx s = std::sqrt(det);
  a /= s;
  if (phase) *phase = s;
  return {a, b};
}

struct Decomposition {
  cplx phase = 1.0;
  LocalPair before;  // applied first
  double a = 0, b = 0, c = 0;
  LocalPair after;

  Mat4 reconstruct() const { return phase * after.matrix() * canonical(a, b, c) * before.matrix(); }
};

/// Orthogonal P (det +1) diagonalizing the complex symmetric unitary m.
inline Eigen::Matrix4d diagonalize_symmetric_unitary(const Mat4& m) {
  const Eigen::Matrix4d re = m.real(), im = m.imag();
  // Re and Im commute; a generic combination separates degenerate subspaces.
  for (double r : {0.6180339887498949, 1.4142135623730951, 2.718281828459045, 0.3183098861837907, 5.0}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(re + r * im);
    Eigen::Matrix4d p = es.eigenvectors();
    if (p.determinant() < 0) p.col(0) = -p.col(0);
    const Mat4 d = p.transpose().cast<cplx>() * m * p.cast<cplx>();
    Mat4 off = d;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() < 1e-10) return p;
  }
  throw Error("kak: failed to diagonalize symmetric unitary");
}

/// Reduces x to (-pi/4, pi/4] and returns the number of pi/2 shifts removed.
inline int reduce_quarter(double& x) {
  const double h = kPi / 2;
  const int k = static_cast<int>(std::ceil((x - kPi / 4) / h - 1e-12));
  x -= k * h;
  return k;
}

inline Decomposition decompose(const Mat4& u) {
  require(mat::is_unitary(u, 1e-9), "kak: input is not unitary");
  const Mat4 q = magic();
  const cplx det = u.determinant();
  const cplx det4 = std::pow(det, 0.25);
  const Mat4 us = u / det4;
  const Mat4 up = q.adjoint() * us * q;
  const Mat4 m = up.transpose() * up;
  const Eigen::Matrix4d p = diagonalize_symmetric_unitary(m);
  const Mat4 d = p.transpose().cast<cplx>() * m * p.cast<cplx>();
  std::array<double, 4> theta{};
  for (int k = 0; k < 4; ++k) theta[static_cast<std::size_t>(k)] = std::arg(d(k, k)) / 2;
  Eigen::Vector4cd ph;
  for (int k = 0; k < 4; ++k) ph(k) = std::exp(kI * theta[static_cast<std::size_t>(k)]);
  // up = k1 * diag(ph) * p^T with k1 real orthogonal
  Mat4 k1 = up * p.cast<cplx>() * ph.conjugate().asDiagonal();
  if (k1.real().determinant() < 0) {
    theta[0] += kPi;
    ph(0) = -ph(0);
    k1.col(0) = -k1.col(0);
  }
  const Mat4 k2 = p.transpose().cast<cplx>();

  // Remove the mean so the phases match a canonical gate; the shift is a global phase.
  const double mean = (theta[0] + theta[1] + theta[2] + theta[3]) / 4;
  for (double& t : theta) t -= mean;
  Decomposition out;
  out.a = (theta[0] + theta[1]) / 2;
  out.b = -(theta[0] + theta[2]) / 2;
  out.c = -(theta[1] + theta[2]) / 2;

  cplx ph_after = 1.0, ph_before = 1.0;
  out.after = factor_local(q * k1 * q.adjoint(), &ph_after);
  out.before = factor_local(q * k2 * q.adjoint(), &ph_before);

  // exp(i(x + k pi/2) P⊗P) = exp(i x P⊗P) * (i P⊗P)^k
  const std::array<Mat2, 3> paulis{mat::pauli_x(), mat::pauli_y(), mat::pauli_z()};
  std::array<double*, 3> coords{&out.a, &out.b, &out.c};
  for (int axis = 0; axis < 3; ++axis) {
    const int k = reduce_quarter(*coords[static_cast<std::size_t>(axis)]);
    const int kk = ((k % 4) + 4) % 4;
    for (int r = 0; r < kk; ++r) {
      out.before.a = paulis[static_cast<std::size_t>(axis)] * out.before.a;
      out.before.b = paulis[static_cast<std::size_t>(axis)] * out.before.b;
      ph_before *= kI;
    }
  }
  out.phase = det4 * ph_after * ph_before * std::exp(kI * mean);
  // fix any residual phase numerically (sign ambiguities of square roots)
  const Mat4 rec = out.reconstruct();
  Eigen::Index r = 0, c = 0;
  u.cwiseAbs().maxCoeff(&r, &c);
  const cplx fix = u(r, c) / rec(r, c);
  out.phase *= fix / std::abs(fix);
  return out;
}

}  // namespace vdcut::kak
