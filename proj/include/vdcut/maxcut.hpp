#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vdcut/observable.hpp"
#include "vdcut/statevector.hpp"

namespace vdcut {

struct MaxCutProblem {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  void validate() const {
    require(n >= 1, "maxcut: graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
      require(a >= 0 && a < n && b >= 0 && b < n, "maxcut: edge references a missing vertex");
      require(a != b, "maxcut: self-loop");
      require(seen.insert(std::minmax(a, b)).second, "maxcut: duplicate edge");
    }
  }

  static MaxCutProblem ring(int n) {
    MaxCutProblem p{n, {}};
    if (n == 2) p.edges.emplace_back(0, 1);
    if (n > 2)
      for (int i = 0; i < n; ++i) p.edges.emplace_back(i, (i + 1) % n);
    p.validate();
    return p;
  }

  /// "n" on the first line, then one "a b" edge per line; '#' starts a comment.
  static MaxCutProblem parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    MaxCutProblem p;
    bool header = false;
    while (std::getline(in, line)) {
      line = line.substr(0, line.find('#'));
      std::istringstream ls(line);
      int a = 0, b = 0;
      if (!header) {
        if (ls >> a) {
          p.n = a;
          header = true;
        }
        continue;
      }
      if (!(ls >> a)) continue;
      require(static_cast<bool>(ls >> b), "maxcut: edge line needs two vertices");
      p.edges.emplace_back(a, b);
    }
    require(header, "maxcut: missing vertex count");
    p.validate();
    return p;
  }

  static MaxCutProblem load(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), "maxcut: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  int cut_value(std::uint64_t x) const {
    int v = 0;
    for (auto [a, b] : edges) v += static_cast<int>(((x >> a) ^ (x >> b)) & 1U);
    return v;
  }

  int max_cut() const {
    int best = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) best = std::max(best, cut_value(x));
    return best;
  }
};

/// H = sum over edges of (1 - Z_a Z_b) / 2, with the constants merged into one identity term.
inline PauliObservable maxcut_hamiltonian(const MaxCutProblem& p) {
  p.validate();
  PauliObservable h(p.n);
  h.add(0.5 * static_cast<double>(p.edges.size()), std::string(static_cast<std::size_t>(p.n), 'I'));
  for (auto [a, b] : p.edges) h.add_z(-0.5, {a, b});
  return h;
}

/// <psi|obs|psi> for a diagonal observable.
inline double diagonal_expectation(const std::vector<double>& probs, const PauliObservable& obs) {
  require(obs.is_diagonal(), "diagonal_expectation: observable has X or Y letters");
  double e = 0;
  for (const auto& t : obs.terms()) {
    const std::uint64_t m = z_mask(t.paulis);
    double s = 0;
    for (std::uint64_t x = 0; x < probs.size(); ++x) s += (__builtin_popcountll(x & m) & 1 ? -probs[x] : probs[x]);
    e += t.coeff * s;
  }
  return e;
}

inline double pure_expectation(const Circuit& c, const PauliObservable& obs) {
  obs.check_width(c.width());
  return diagonal_expectation(simulate_pure(c).probabilities(), obs);
}

}  // namespace vdcut
