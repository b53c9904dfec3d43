#pragma once

#include <algorithm>
#include <random>

#include "vdcut/circuit.hpp"
#include "vdcut/cutting.hpp"
#include "vdcut/density_matrix.hpp"

namespace vdcut::testing {

inline MatX random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatX a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

inline MatX random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  return Eigen::HouseholderQR<MatX>(random_complex(d, d, rng)).householderQ();
}

/// Ginibre-distributed mixed state.
inline DensityMatrix random_density(int n, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  const MatX a = random_complex(d, d, rng);
  MatX r = a * a.adjoint();
  r /= r.trace();
  return DensityMatrix::from_matrix(r);
}

/// U diag(p) U^dagger with a Haar-ish random basis.
inline DensityMatrix density_with_spectrum(const std::vector<double>& p, std::mt19937_64& rng) {
  const auto d = static_cast<Eigen::Index>(p.size());
  const MatX u = random_unitary(d, rng);
  Eigen::VectorXcd diag(d);
  for (Eigen::Index k = 0; k < d; ++k) diag(k) = p[static_cast<std::size_t>(k)];
  return DensityMatrix::from_matrix(u * diag.asDiagonal() * u.adjoint());
}

inline DensityMatrix random_diagonal_density(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::Index d = Eigen::Index{1} << n;
  MatX r = MatX::Zero(d, d);
  double s = 0;
  for (Eigen::Index k = 0; k < d; ++k) s += (r(k, k) = u(rng)).real();
  return DensityMatrix::from_matrix(r / s);
}

inline Circuit random_circuit(int n, int gates, std::mt19937_64& rng, bool with_unitaries = true) {
  Circuit c(n);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_int_distribution<int> q(0, n - 1);
  std::uniform_int_distribution<int> kind(0, n > 1 ? (with_unitaries ? 7 : 6) : 3);
  for (int i = 0; i < gates; ++i) {
    const int a = q(rng);
    int b = q(rng);
    while (n > 1 && b == a) b = q(rng);
    switch (kind(rng)) {
      case 0: c.push(Gate::ry(a, ang(rng))); break;
      case 1: c.push(Gate::rz(a, ang(rng))); break;
      case 2: c.push(Gate::h(a)); break;
      case 3: c.push(Gate::x(a)); break;
      case 4: c.push(Gate::cnot(a, b)); break;
      case 5: c.push(Gate::rzz(a, b, ang(rng))); break;
      case 6: c.push(Gate::swap(a, b)); break;
      default: c.push(Gate::unitary(a, b, Mat4(random_unitary(4, rng)))); break;
    }
  }
  return c;
}

struct CutInstance {
  Circuit circuit;
  CutPoint cut;
};

/// Upstream block on U + {q}, then a downstream block on D + {q} whose first gates
/// chain q into every D qubit. U and D are disjoint, so the cut after the upstream
/// block is valid. Half the instances measure a random subset in random order.
inline CutInstance random_cut_instance(int max_width, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> width(2, max_width);
  const int n = width(rng);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  const int q = perm[0];
  const int nu = std::uniform_int_distribution<int>(0, n - 1)(rng);
  std::vector<int> up{q}, down{q};
  for (int k = 1; k < n; ++k) (k <= nu ? up : down).push_back(perm[static_cast<std::size_t>(k)]);

  auto block = [&](const std::vector<int>& qs, int gates) {
    Circuit local = random_circuit(static_cast<int>(qs.size()), gates, rng);
    return remap_qubits(local, qs, n);
  };
  std::uniform_int_distribution<int> len(0, 6);
  Circuit c(n, "cut-instance");
  for (const auto& g : block(up, len(rng))) c.push(g);
  const long position = static_cast<long>(c.size()) - 1;
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  c.push(Gate::ry(q, ang(rng)));
  for (std::size_t k = 1; k < down.size(); ++k) c.push(Gate::cnot(down[k - 1], down[k]));
  for (const auto& g : block(down, len(rng))) c.push(g);

  if (std::bernoulli_distribution(0.5)(rng)) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    for (int k = 0; k < m; ++k) c.push(Gate::measure(perm[static_cast<std::size_t>(k)]));
  }
  return {c, CutPoint{q, position}};
}

/// All observables made of I/Z letters with one or two Z's.
inline std::vector<std::string> z_strings(int n) {
  std::vector<std::string> out;
  for (int a = 0; a < n; ++a) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(a)] = 'Z';
    out.push_back(s);
    for (int b = a + 1; b < n; ++b) {
      std::string t = s;
      t[static_cast<std::size_t>(b)] = 'Z';
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace vdcut::testing
