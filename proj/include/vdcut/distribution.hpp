#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "vdcut/error.hpp"

namespace vdcut {

/// Normalized probability vector over n-bit outcomes. Index bit k is qubit k; the
/// string form puts qubit 0 first ("01" means q0=0, q1=1).
class Distribution {
 public:
  static constexpr double kNormTol = 1e-9;

  Distribution() = default;
  Distribution(int width, std::vector<double> probs) : width_(width), p_(std::move(probs)) {
    require(width >= 0 && width < 31, "distribution width out of range");
    require(p_.size() == (std::size_t{1} << width), "distribution size must be 2^width");
    double s = 0;
    for (double v : p_) {
      require(v >= 0.0 && std::isfinite(v), "probabilities must be non-negative");
      s += v;
    }
    require(std::abs(s - 1.0) <= kNormTol, "probabilities must sum to 1 (got " + std::to_string(s) + ")");
  }

  static Distribution point(int width, std::uint64_t outcome) {
    std::vector<double> p(std::size_t{1} << width, 0.0);
    p.at(outcome) = 1.0;
    return Distribution(width, std::move(p));
  }

  static Distribution uniform(int width) {
    const std::size_t d = std::size_t{1} << width;
    return Distribution(width, std::vector<double>(d, 1.0 / static_cast<double>(d)));
  }

  static Distribution from_map(int width, const std::map<std::string, double>& m) {
    std::vector<double> p(std::size_t{1} << width, 0.0);
    for (const auto& [k, v] : m) p.at(parse_outcome(k, width)) += v;
    return Distribution(width, std::move(p));
  }

  /// Clamps tiny negatives and renormalizes arbitrary non-negative weights.
  static Distribution normalized(int width, std::vector<double> w) {
    double s = 0;
    for (double& v : w) {
      if (v < 0) v = 0;
      s += v;
    }
    require(s > 0, "cannot normalize an all-zero vector");
    for (double& v : w) v /= s;
    return Distribution(width, std::move(w));
  }

  int width() const { return width_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::uint64_t i) const { return p_[i]; }
  double at(const std::string& outcome) const { return p_.at(parse_outcome(outcome, width_)); }
  const std::vector<double>& probs() const { return p_; }

  static std::uint64_t parse_outcome(const std::string& s, int width) {
    require(static_cast<int>(s.size()) == width, "outcome string length must equal width");
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      require(s[k] == '0' || s[k] == '1', "outcome strings contain only 0/1");
      if (s[k] == '1') idx |= (std::uint64_t{1} << k);
    }
    return idx;
  }

  static std::string outcome_string(std::uint64_t idx, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int k = 0; k < width; ++k)
      if ((idx >> k) & 1U) s[static_cast<std::size_t>(k)] = '1';
    return s;
  }

 private:
  int width_ = 0;
  std::vector<double> p_;
};

/// Shot histogram over n-bit outcomes.
struct Counts {
  int width = 0;
  std::vector<std::uint64_t> hist;
  std::uint64_t shots = 0;

  Distribution frequencies() const {
    require(shots > 0, "empty counts");
    std::vector<double> p(hist.size());
    for (std::size_t i = 0; i < hist.size(); ++i) p[i] = static_cast<double>(hist[i]) / static_cast<double>(shots);
    return Distribution::normalized(width, std::move(p));
  }
};

/// Seed derivation: one splitmix64 step.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0,1) with 53 random bits; independent of libstdc++ distribution internals.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Multinomial draw; reproducible for a fixed seed.
inline Counts sample(const Distribution& dist, std::uint64_t shots, std::uint64_t seed) {
  require(shots >= 1, "shots must be >= 1");
  std::vector<double> cdf(dist.size());
  std::partial_sum(dist.probs().begin(), dist.probs().end(), cdf.begin());
  const double total = cdf.back();
  Counts c{dist.width(), std::vector<std::uint64_t>(dist.size(), 0), shots};
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= cdf.size()) idx = cdf.size() - 1;
    while (dist[idx] == 0.0 && idx > 0) --idx;  // never land on a zero-probability bin
    ++c.hist[idx];
  }
  return c;
}

/// Marginal over `bits` (output bit j = input bit bits[j]).
inline Distribution marginal(const Distribution& d, const std::vector<int>& bits) {
  const int m = static_cast<int>(bits.size());
  std::vector<double> out(std::size_t{1} << m, 0.0);
  for (std::uint64_t x = 0; x < d.size(); ++x) {
    std::uint64_t y = 0;
    for (int j = 0; j < m; ++j)
      if ((x >> bits[static_cast<std::size_t>(j)]) & 1U) y |= (std::uint64_t{1} << j);
    out[y] += d[x];
  }
  return Distribution::normalized(m, std::move(out));
}

inline double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size(), "tv_distance: size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

inline double tv_distance(const Distribution& a, const Distribution& b) {
  require(a.width() == b.width(), "tv_distance: width mismatch");
  return tv_distance(a.probs(), b.probs());
}

}  // namespace vdcut
