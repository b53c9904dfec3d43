#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "vdcut/error.hpp"
#include "vdcut/linalg.hpp"

namespace vdcut {

enum class GateKind { RY, RZ, RZZ, X, H, CNOT, SWAP, TwoQubitUnitary, Measure };

inline std::string_view kind_name(GateKind k) {
  switch (k) {
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
    case GateKind::TwoQubitUnitary: return "U2";
    case GateKind::Measure: return "MEASURE";
  }
  return "?";
}

inline GateKind kind_from_name(std::string_view s) {
  for (GateKind k : {GateKind::RY, GateKind::RZ, GateKind::RZZ, GateKind::X, GateKind::H,
                     GateKind::CNOT, GateKind::SWAP, GateKind::TwoQubitUnitary, GateKind::Measure})
    if (kind_name(k) == s) return k;
  throw Error("unknown gate kind '" + std::string(s) + "'");
}

inline constexpr bool takes_angle(GateKind k) {
  return k == GateKind::RY || k == GateKind::RZ || k == GateKind::RZZ;
}

inline constexpr int kind_arity(GateKind k) {
  switch (k) {
    case GateKind::RZZ:
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::TwoQubitUnitary: return 2;
    default: return 1;
  }
}

namespace tags {
inline constexpr std::string_view kCopy0 = "copy-0";
inline constexpr std::string_view kCopy1 = "copy-1";
inline constexpr std::string_view kDiag = "diag";
inline constexpr std::string_view kCrosstalk = "xtalk";
inline constexpr std::string_view kRouting = "route";
}  // namespace tags

/// One circuit operation. Construct through the named factories, which enforce
/// the arity/angle/unitary invariants.
class Gate {
 public:
  static constexpr double kUnitaryTol = 1e-12;

  static Gate ry(int q, double theta, std::string tag = {}) { return Gate(GateKind::RY, {q, -1}, theta, {}, std::move(tag)); }
  static Gate rz(int q, double theta, std::string tag = {}) { return Gate(GateKind::RZ, {q, -1}, theta, {}, std::move(tag)); }
  static Gate x(int q, std::string tag = {}) { return Gate(GateKind::X, {q, -1}, {}, {}, std::move(tag)); }
  static Gate h(int q, std::string tag = {}) { return Gate(GateKind::H, {q, -1}, {}, {}, std::move(tag)); }
  static Gate measure(int q, std::string tag = {}) { return Gate(GateKind::Measure, {q, -1}, {}, {}, std::move(tag)); }
  static Gate cnot(int c, int t, std::string tag = {}) { return Gate(GateKind::CNOT, {c, t}, {}, {}, std::move(tag)); }
  static Gate swap(int a, int b, std::string tag = {}) { return Gate(GateKind::SWAP, {a, b}, {}, {}, std::move(tag)); }
  static Gate rzz(int a, int b, double theta, std::string tag = {}) {
    return Gate(GateKind::RZZ, {a, b}, theta, {}, std::move(tag));
  }
  static Gate unitary(int a, int b, const Mat4& u, std::string tag = {}) {
    return Gate(GateKind::TwoQubitUnitary, {a, b}, {}, u, std::move(tag));
  }

  /// Generic constructor used by parsers; validates everything.
  static Gate make(GateKind kind, std::array<int, 2> qubits, std::optional<double> angle,
                   std::optional<Mat4> u, std::string tag) {
    return Gate(kind, qubits, angle, std::move(u), std::move(tag));
  }

  GateKind kind() const { return kind_; }
  int arity() const { return kind_arity(kind_); }
  int qubit(int i) const { return qubits_[static_cast<std::size_t>(i)]; }
  const std::array<int, 2>& qubits() const { return qubits_; }
  bool acts_on(int q) const { return qubits_[0] == q || (arity() == 2 && qubits_[1] == q); }
  double angle() const {
    require(angle_.has_value(), "gate has no angle");
    return *angle_;
  }
  const std::optional<double>& maybe_angle() const { return angle_; }
  const Mat4& explicit_unitary() const {
    require(unitary_.has_value(), "gate has no explicit unitary");
    return *unitary_;
  }
  const std::string& tag() const { return tag_; }
  bool is_measure() const { return kind_ == GateKind::Measure; }
  bool is_two_qubit() const { return arity() == 2; }

  Gate with_qubits(std::array<int, 2> q) const {
    Gate g = *this;
    g.qubits_ = q;
    if (arity() == 1) g.qubits_[1] = -1;
    g.validate_qubits();
    return g;
  }
  Gate with_tag(std::string tag) const {
    Gate g = *this;
    g.tag_ = std::move(tag);
    return g;
  }

  /// 2x2 (one-qubit) matrix. Not valid for Measure or two-qubit kinds.
  Mat2 matrix1() const {
    switch (kind_) {
      case GateKind::RY: return mat::ry(*angle_);
      case GateKind::RZ: return mat::rz(*angle_);
      case GateKind::X: return mat::pauli_x();
      case GateKind::H: return mat::hadamard();
      default: throw Error("matrix1 on non one-qubit unitary gate");
    }
  }

  /// 4x4 matrix with qubit(0) as the most significant index.
  Mat4 matrix2() const {
    switch (kind_) {
      case GateKind::CNOT: return mat::cnot();
      case GateKind::SWAP: return mat::swap();
      case GateKind::RZZ: return mat::rzz(*angle_);
      case GateKind::TwoQubitUnitary: return *unitary_;
      default: throw Error("matrix2 on non two-qubit gate");
    }
  }

  /// Inverse gate with the same qubits and tag.
  Gate adjoint() const {
    switch (kind_) {
      case GateKind::RY:
      case GateKind::RZ:
      case GateKind::RZZ: return Gate(kind_, qubits_, -*angle_, {}, tag_);
      case GateKind::TwoQubitUnitary: return Gate(kind_, qubits_, {}, Mat4(unitary_->adjoint()), tag_);
      case GateKind::Measure: throw Error("measurement has no adjoint");
      default: return *this;
    }
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    if (a.kind_ != b.kind_ || a.qubits_ != b.qubits_ || a.tag_ != b.tag_ || a.angle_ != b.angle_) return false;
    if (a.unitary_.has_value() != b.unitary_.has_value()) return false;
    return !a.unitary_ || *a.unitary_ == *b.unitary_;
  }

 private:
  Gate(GateKind kind, std::array<int, 2> qubits, std::optional<double> angle, std::optional<Mat4> u,
       std::string tag)
      : kind_(kind), qubits_(qubits), angle_(angle), unitary_(std::move(u)), tag_(std::move(tag)) {
    if (arity() == 1) qubits_[1] = -1;
    validate_qubits();
    if (takes_angle(kind_) != angle_.has_value())
      throw Error(std::string(kind_name(kind_)) + (angle_ ? " does not take an angle" : " requires an angle"));
    if (angle_ && !std::isfinite(*angle_)) throw Error("gate angle must be finite");
    if ((kind_ == GateKind::TwoQubitUnitary) != unitary_.has_value())
      throw Error("explicit unitary must be present iff kind is TwoQubitUnitary");
    if (unitary_ && !mat::is_unitary(*unitary_, kUnitaryTol)) throw Error("explicit matrix is not unitary");
  }

  void validate_qubits() const {
    if (qubits_[0] < 0) throw Error("negative qubit index");
    if (arity() == 2) {
      if (qubits_[1] < 0) throw Error("negative qubit index");
      if (qubits_[0] == qubits_[1]) throw Error("two-qubit gate on identical qubits");
    }
  }

  GateKind kind_;
  std::array<int, 2> qubits_;
  std::optional<double> angle_;
  std::optional<Mat4> unitary_;
  std::string tag_;
};

}  // namespace vdcut
