#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "vdcut/ansatz.hpp"
#include "vdcut/maxcut.hpp"

namespace vdcut {

struct OptimizerOptions {
  int starts = 6;
  int max_evaluations = 4000;  // per start
  double rho_begin = 0.5;
  double rho_end = 1e-7;
};

struct OptimizationResult {
  std::vector<double> x;
  double value = 0;
  int evaluations = 0;
};

/// Derivative-free trust-region descent: a linear model is interpolated on the
/// simplex {x, x + rho e_i}, the step goes to the model minimum on the radius-rho
/// ball, and rho halves whenever the step fails to decrease f.
inline OptimizationResult minimize_linear_trust(const std::function<double(const std::vector<double>&)>& f,
                                                std::vector<double> x, const OptimizerOptions& opt = {}) {
  const std::size_t d = x.size();
  OptimizationResult r;
  double fx = f(x);
  r.evaluations = 1;
  double rho = opt.rho_begin;
  std::vector<double> g(d), y(d);
  while (rho > opt.rho_end && r.evaluations + static_cast<int>(d) + 1 <= opt.max_evaluations) {
    double norm = 0;
    for (std::size_t i = 0; i < d; ++i) {
      y = x;
      y[i] += rho;
      g[i] = (f(y) - fx) / rho;
      norm += g[i] * g[i];
    }
    r.evaluations += static_cast<int>(d);
    norm = std::sqrt(norm);
    if (norm == 0) {
      rho *= 0.5;
      continue;
    }
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] - rho * g[i] / norm;
    const double fy = f(y);
    ++r.evaluations;
    if (fy < fx) {
      x = y;
      fx = fy;
      rho = std::min(opt.rho_begin, rho * 1.5);
    } else {
      rho *= 0.5;
    }
  }
  r.x = std::move(x);
  r.value = fx;
  return r;
}

/// Multi-start maximization of the noiseless <H> over the ansatz parameters.
inline OptimizationResult optimize_parameters(const MaxCutProblem& problem, const RealAmplitudes& ansatz, std::uint64_t seed,
                                              const OptimizerOptions& opt = {}) {
  require(ansatz.n == problem.n, "optimize_parameters: ansatz width differs from graph size");
  const PauliObservable h = maxcut_hamiltonian(problem);
  auto loss = [&](const std::vector<double>& t) { return -pure_expectation(ansatz.bind(t), h); };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  OptimizationResult best;
  best.value = std::numeric_limits<double>::infinity();
  int total = 0;
  for (int s = 0; s < opt.starts; ++s) {
    std::vector<double> x0(static_cast<std::size_t>(ansatz.num_parameters()));
    for (double& v : x0) v = u(rng);
    OptimizationResult r = minimize_linear_trust(loss, x0, opt);
    total += r.evaluations;
    if (r.value < best.value) best = std::move(r);
  }
  best.value = -best.value;
  best.evaluations = total;
  return best;
}

}  // namespace vdcut
