#pragma once

#include <string>
#include <vector>

#include "vdcut/error.hpp"
#include "vdcut/linalg.hpp"

namespace vdcut {

/// Real linear combination of Pauli strings. Character k of a string acts on qubit k.
class PauliObservable {
 public:
  struct Term {
    double coeff;
    std::string paulis;
  };

  PauliObservable() = default;
  explicit PauliObservable(int width) : width_(width) {}

  int width() const { return width_; }
  const std::vector<Term>& terms() const { return terms_; }

  PauliObservable& add(double coeff, std::string paulis) {
    require(static_cast<int>(paulis.size()) == width_, "Pauli string length must equal observable width");
    for (char ch : paulis)
      require(ch == 'I' || ch == 'X' || ch == 'Y' || ch == 'Z', "Pauli letters must be one of I, X, Y, Z");
    terms_.push_back({coeff, std::move(paulis)});
    return *this;
  }

  /// Adds coeff * Z_{q...}; identity elsewhere.
  PauliObservable& add_z(double coeff, std::initializer_list<int> qubits) {
    std::string s(static_cast<std::size_t>(width_), 'I');
    for (int q : qubits) {
      require(q >= 0 && q < width_, "qubit out of range");
      s[static_cast<std::size_t>(q)] = 'Z';
    }
    return add(coeff, s);
  }

  bool is_diagonal() const {
    for (const auto& t : terms_)
      for (char ch : t.paulis)
        if (ch == 'X' || ch == 'Y') return false;
    return true;
  }

  void check_width(int n) const {
    require(width_ == n, "observable width " + std::to_string(width_) + " does not match state width " + std::to_string(n));
  }

 private:
  int width_ = 0;
  std::vector<Term> terms_;
};

/// Bit mask of Z positions in a diagonal Pauli string (bit k = qubit k).
inline std::uint64_t z_mask(const std::string& paulis) {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < paulis.size(); ++k) {
    require(paulis[k] == 'I' || paulis[k] == 'Z', "non-diagonal Pauli letter in diagonal context");
    if (paulis[k] == 'Z') m |= (std::uint64_t{1} << k);
  }
  return m;
}

/// Dense matrix of the observable; string position k acts on index bit k.
inline MatX observable_matrix(const PauliObservable& obs) {
  const int n = obs.width();
  const Eigen::Index d = Eigen::Index{1} << n;
  MatX out = MatX::Zero(d, d);
  for (const auto& t : obs.terms()) {
    MatX op = MatX::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
      Mat2 p = mat::identity2();
      switch (t.paulis[static_cast<std::size_t>(k)]) {
        case 'X': p = mat::pauli_x(); break;
        case 'Y': p = mat::pauli_y(); break;
        case 'Z': p = mat::pauli_z(); break;
        default: break;
      }
      op = mat::kron(op, MatX(p));
    }
    out += t.coeff * op;
  }
  return out;
}

}  // namespace vdcut
