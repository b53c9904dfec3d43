#pragma once

#include <cmath>
#include <vector>

#include "vdcut/circuit.hpp"
#include "vdcut/kak.hpp"

namespace vdcut {

namespace synth {

/// A step of a two-qubit template: either a CNOT or a pair of one-qubit gates.
struct Step {
  bool cnot = false;
  bool control_msb = true;  // CNOT control on the most significant qubit
  kak::LocalPair local;
};

inline Mat4 cnot_matrix(bool control_msb) {
  if (control_msb) return mat::cnot();
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 3) = m(2, 2) = m(3, 1) = 1;
  return m;
}

inline Mat4 product(const std::vector<Step>& steps) {
  Mat4 u = Mat4::Identity();
  for (const auto& s : steps) u = (s.cnot ? cnot_matrix(s.control_msb) : s.local.matrix()) * u;
  return u;
}

inline Step local(const Mat2& a, const Mat2& b) { return {false, true, {a, b}}; }
inline Step cx(bool control_msb) { return {true, control_msb, {}}; }

/// Conjugates a template: returns w * T * w^dagger in time order.
inline std::vector<Step> conjugate(const std::vector<Step>& t, const kak::LocalPair& w) {
  std::vector<Step> out;
  out.push_back(local(w.a.adjoint(), w.b.adjoint()));
  out.insert(out.end(), t.begin(), t.end());
  out.push_back(local(w.a, w.b));
  return out;
}

inline kak::LocalPair swap_xz() { return {mat::hadamard(), mat::hadamard()}; }          // XX <-> ZZ
inline kak::LocalPair swap_yz() { return {mat::rx(kPi / 2), mat::rx(kPi / 2)}; }        // YY -> ZZ, ZZ -> YY
inline kak::LocalPair swap_xy() { return {mat::rz(kPi / 2), mat::rz(kPi / 2)}; }        // XX <-> YY

/// exp(i pi/4 XX) with one CNOT.
inline std::vector<Step> one_cnot_xx() {
  const Mat2 h = mat::hadamard();
  return {local(h, mat::identity2()), cx(true), local(h * mat::rz(-kPi / 2), h * mat::rz(-kPi / 2) * h)};
}

/// exp(i(a XX + b YY)) with two CNOTs.
inline std::vector<Step> two_cnot(double a, double b) {
  const Mat2 r = mat::rx(kPi / 2);
  return {local(r.adjoint(), r.adjoint()), cx(true), local(mat::rx(-2 * a), mat::rz(-2 * b)), cx(true), local(r, r)};
}

/// exp(i(a XX + b YY + c ZZ)) with three CNOTs.
inline std::vector<Step> three_cnot(double a, double b, double c) {
  const Mat2 id = mat::identity2();
  return {local(id, mat::rz(kPi / 2)),
          cx(false),
          local(mat::rz(-2 * c + kPi / 2), mat::ry(-2 * a + kPi / 2)),
          cx(true),
          local(id, mat::ry(2 * b - kPi / 2)),
          cx(false),
          local(mat::rz(-kPi / 2), id)};
}

/// Template for the canonical gate with the fewest CNOTs.
inline std::vector<Step> canonical_template(double a, double b, double c, double tol = 1e-9) {
  auto zero = [&](double v) { return std::abs(v) < tol; };
  auto quarter = [&](double v) { return std::abs(std::abs(v) - kPi / 4) < tol; };
  const int nz = zero(a) + zero(b) + zero(c);
  if (nz == 3) return {};
  if (nz == 2) {
    const double v = zero(a) ? (zero(b) ? c : b) : a;
    if (quarter(v)) {
      std::vector<Step> t = one_cnot_xx();
      if (v < 0) t.push_back(local(mat::pauli_x(), mat::pauli_x()));  // exp(-i pi/4 XX) = exp(i pi/4 XX) (-i XX)
      if (!zero(b)) return conjugate(t, swap_xy());
      if (!zero(c)) return conjugate(t, swap_xz());
      return t;
    }
  }
  if (zero(c)) return two_cnot(a, b);
  if (zero(b)) return conjugate(two_cnot(a, c), swap_yz());
  if (zero(a)) return conjugate(two_cnot(c, b), swap_xz());
  return three_cnot(a, b, c);
}

/// ZYZ angles: u = phase * RZ(phi) RY(theta) RZ(lambda).
struct Euler {
  double phi = 0, theta = 0, lambda = 0;
};

inline Euler zyz(const Mat2& u) {
  const Mat2 v = u / std::sqrt(u.determinant());
  Euler e;
  e.theta = 2 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  const double sum = 2 * std::arg(v(1, 1));   // phi + lambda
  const double diff = 2 * std::arg(v(1, 0));  // phi - lambda
  if (std::abs(v(1, 0)) < 1e-14) {
    e.phi = sum;
    e.lambda = 0;
  } else if (std::abs(v(0, 0)) < 1e-14) {
    e.phi = diff;
    e.lambda = 0;
  } else {
    e.phi = (sum + diff) / 2;
    e.lambda = (sum - diff) / 2;
  }
  return e;
}

inline bool negligible_angle(double t) {
  const double w = std::remainder(t, 4 * kPi);
  return std::abs(w) < 1e-12 || std::abs(std::abs(w) - 2 * kPi) < 1e-12;  // RZ(2pi) = -I
}

inline void emit_one_qubit(Circuit& out, const Mat2& u, int q, const std::string& tag) {
  if ((u - u(0, 0) * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12) return;
  const Euler e = zyz(u);
  if (!negligible_angle(e.lambda)) out.push(Gate::rz(q, e.lambda, tag));
  if (!negligible_angle(e.theta)) out.push(Gate::ry(q, e.theta, tag));
  if (!negligible_angle(e.phi)) out.push(Gate::rz(q, e.phi, tag));
}

/// Emits gates for u on (q_msb, q_lsb); checks the result against u.
inline void emit_two_qubit(Circuit& out, const Mat4& u, int q_msb, int q_lsb, const std::string& tag) {
  const kak::Decomposition d = kak::decompose(u);
  std::vector<Step> steps{local(d.before.a, d.before.b)};
  for (const auto& s : canonical_template(d.a, d.b, d.c)) steps.push_back(s);
  steps.push_back(local(d.after.a, d.after.b));
  require(mat::phase_distance(product(steps), u) < 1e-9, "two-qubit synthesis mismatch");

  Mat2 pa = Mat2::Identity(), pb = Mat2::Identity();
  for (const auto& s : steps) {
    if (!s.cnot) {
      pa = s.local.a * pa;
      pb = s.local.b * pb;
      continue;
    }
    emit_one_qubit(out, pa, q_msb, tag);
    emit_one_qubit(out, pb, q_lsb, tag);
    pa = pb = Mat2::Identity();
    if (s.control_msb)
      out.push(Gate::cnot(q_msb, q_lsb, tag));
    else
      out.push(Gate::cnot(q_lsb, q_msb, tag));
  }
  emit_one_qubit(out, pa, q_msb, tag);
  emit_one_qubit(out, pb, q_lsb, tag);
}

}  // namespace synth

inline bool is_basis_kind(GateKind k) {
  return k == GateKind::RY || k == GateKind::RZ || k == GateKind::X || k == GateKind::H || k == GateKind::CNOT ||
         k == GateKind::Measure;
}

/// Rewrites into {RY, RZ, X, H, CNOT} (+ Measure). Tags are inherited.
inline Circuit decompose_to_basis(const Circuit& c) {
  Circuit out(c.width(), c.name());
  for (const auto& g : c) {
    const std::string& tag = g.tag();
    switch (g.kind()) {
      case GateKind::SWAP:
        out.push(Gate::cnot(g.qubit(0), g.qubit(1), tag));
        out.push(Gate::cnot(g.qubit(1), g.qubit(0), tag));
        out.push(Gate::cnot(g.qubit(0), g.qubit(1), tag));
        break;
      case GateKind::RZZ:
        out.push(Gate::cnot(g.qubit(0), g.qubit(1), tag));
        out.push(Gate::rz(g.qubit(1), g.angle(), tag));
        out.push(Gate::cnot(g.qubit(0), g.qubit(1), tag));
        break;
      case GateKind::TwoQubitUnitary:
        synth::emit_two_qubit(out, g.explicit_unitary(), g.qubit(0), g.qubit(1), tag);
        break;
      default:
        out.push(g);
    }
  }
  return out;
}

inline std::size_t cnot_count(const Circuit& c) {
  for (const auto& g : c) require(is_basis_kind(g.kind()), "cnot_count: circuit is not decomposed to basis gates");
  return c.count_if_kind(GateKind::CNOT);
}

}  // namespace vdcut
