#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace vdcut {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline const cplx kI{0.0, 1.0};

namespace mat {

inline Mat2 identity2() { return Mat2::Identity(); }

inline Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 pauli_y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

inline Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat2 hadamard() {
  Mat2 m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

// exp(-i theta Y / 2)
inline Mat2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

// exp(-i theta Z / 2)
inline Mat2 rz(double theta) {
  Mat2 m;
  m << std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2));
  return m;
}

// exp(-i theta X / 2)
inline Mat2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2 m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

/// Kronecker product with `a` acting on the more significant index.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

inline MatX kron(const MatX& a, const MatX& b) {
  MatX m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return m;
}

// Control is the first (most significant) qubit.
inline Mat4 cnot() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

inline Mat4 swap() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

// exp(-i theta Z⊗Z / 2)
inline Mat4 rzz(double theta) {
  Mat4 m = Mat4::Zero();
  const cplx p = std::exp(-kI * (theta / 2)), q = std::exp(kI * (theta / 2));
  m(0, 0) = p;
  m(1, 1) = q;
  m(2, 2) = q;
  m(3, 3) = p;
  return m;
}

template <typename M>
bool is_unitary(const M& u, double tol) {
  const auto prod = (u.adjoint() * u).eval();
  return (prod - M::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Max-abs distance between `a` and `b` after removing the best global phase.
template <typename M>
double phase_distance(const M& a, const M& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) == 0.0) return a.cwiseAbs().maxCoeff();
  cplx ph = a(r, c) / b(r, c);
  if (std::abs(ph) == 0.0) return b.cwiseAbs().maxCoeff();
  ph /= std::abs(ph);
  return (a - ph * b).cwiseAbs().maxCoeff();
}

}  // namespace mat
}  // namespace vdcut
