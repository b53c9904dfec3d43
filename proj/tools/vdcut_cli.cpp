#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "vdcut/vdcut.hpp"

using namespace vdcut;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kCellFailures = 2;

// "a..b", "a,b,c" or "a"
std::vector<int> parse_range(const std::string& s) {
  std::vector<int> out;
  const auto dots = s.find("..");
  try {
    if (dots != std::string::npos) {
      const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
      if (a > b) throw ConfigError("empty range '" + s + "'");
      for (int k = a; k <= b; ++k) out.push_back(k);
    } else {
      for (const auto& tok : detail::split(s, ',')) out.push_back(std::stoi(detail::trim(tok)));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad range '" + s + "'");
  }
  if (out.empty()) throw ConfigError("empty range '" + s + "'");
  return out;
}

std::vector<std::string> parse_list(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& tok : detail::split(s, ','))
    if (!detail::trim(tok).empty()) out.push_back(detail::trim(tok));
  return out;
}

struct RunArgs {
  std::string config, out, noise, methods, graph, map;
  std::uint64_t seed = 0, shots = 0;
  int workers = 0;
};

int cmd_run(const RunArgs& a, CLI::App& sub) {
  ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
  if (sub.count("--seed")) cfg.seed = a.seed;
  if (sub.count("--shots")) cfg.shots = a.shots;
  if (!a.noise.empty()) cfg.noise = parse_list(a.noise);
  if (sub.count("--methods")) cfg.methods = parse_list(a.methods);
  if (!a.graph.empty()) cfg.graph = a.graph;
  if (!a.map.empty()) cfg.coupling_map = a.map;
  if (a.workers > 0) cfg.workers = a.workers;
  if (!a.out.empty()) cfg.output = a.out;
  cfg.validate();

  const ExperimentResult r = run_experiment(cfg);
  std::printf("ideal %.6f\n", r.ideal);
  for (const auto& c : r.cells) {
    if (c.ok)
      std::printf("%-14s %-7s expectation %10.6f  abs_error %.6f  cnot %s  rzz %s\n", c.preset.c_str(), c.method.c_str(),
                  c.expectation, c.abs_error, report_detail::join(c.cnot).c_str(), report_detail::join(c.rzz).c_str());
    else
      std::printf("%-14s %-7s FAILED: %s\n", c.preset.c_str(), c.method.c_str(), c.error.c_str());
  }
  for (const auto& f : emit(r, cfg.output)) std::printf("wrote %s\n", f.c_str());
  return r.failures() > 0 ? kCellFailures : kOk;
}

int cmd_overhead(const std::string& map, const std::string& qubits, const std::string& layers, const std::string& out,
                 int workers) {
  CouplingMap::from_spec(map, 2);  // validates the spec early
  const auto pts = overhead_sweep(parse_range(qubits), parse_range(layers), map, workers > 0 ? workers : default_workers());
  const std::string csv = overhead_csv(pts);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out);
    if (!f.good()) throw Error("cannot write " + out);
    f << csv;
    std::printf("wrote %s\n", out.c_str());
  }
  return kOk;
}

int cmd_optimize(const std::string& config, const std::string& graph, int reps, std::uint64_t seed, bool seed_set,
                 const std::string& out) {
  ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
  if (!graph.empty()) cfg.graph = graph;
  if (reps >= 0) cfg.reps = reps;
  if (seed_set) cfg.seed = seed;
  cfg.parameters = "optimize";
  cfg.validate();
  const MaxCutProblem problem = problem_from_spec(cfg.graph);
  const RealAmplitudes ansatz(problem.n, cfg.reps, entanglement_from_name(cfg.entanglement));
  const OptimizationResult r = optimize_parameters(problem, ansatz, cfg.seed);
  std::printf("<H> = %.12f (max cut %d, %d evaluations)\n", r.value, problem.max_cut(), r.evaluations);
  if (out.empty()) {
    for (double x : r.x) std::printf("%s\n", detail::fmt17(x).c_str());
  } else {
    write_parameters(r.x, out);
    std::printf("wrote %s\n", out.c_str());
  }
  return kOk;
}

int cmd_cut_check(const std::string& config, const std::string& graph, std::uint64_t seed, bool seed_set) {
  ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
  if (!graph.empty()) cfg.graph = graph;
  if (seed_set) cfg.seed = seed;
  cfg.validate();
  const MaxCutProblem problem = problem_from_spec(cfg.graph);
  const Circuit c = benchmark_circuit(cfg, problem);
  const int n = c.width();
  const CouplingMap device = CouplingMap::fully_connected(2 * n);
  const Distribution vd = run_exact(build_vd_circuit(c), NoiseModel::ideal());
  ClassicalCache cache;
  double worst = 0;
  for (const auto& p : build_pairwise_pipelines(c)) {
    const auto r = run_pairwise(p, NoiseModel::ideal(), device, cache);
    const double tv = tv_distance(r.pairwise, marginal(vd, {p.pair, n + p.pair}));
    std::printf("pair %d  TV %.3e\n", p.pair, tv);
    worst = std::max(worst, tv);
  }
  const auto cut = mitigated_expectation_cut(c, maxcut_hamiltonian(problem), NoiseModel::ideal(), device);
  const double end = tv_distance(cut.recombined, cut.uncut.dist);
  std::printf("recombined TV %.3e\n", end);
  const bool ok = worst < 1e-9 && end < 1e-9;
  std::printf("%s\n", ok ? "cutting identity holds" : "cutting identity VIOLATED");
  return ok ? kOk : kCellFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vdcut: virtual distillation with circuit cutting"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "run the method x noise experiment matrix");
  run->add_option("--config", ra.config, "JSON config file");
  run->add_option("--out", ra.out, "output prefix for CSV/JSON");
  run->add_option("--seed", ra.seed, "master seed");
  run->add_option("--shots", ra.shots, "shots per circuit");
  run->add_option("--noise", ra.noise, "comma list of presets or file:path");
  run->add_option("--methods", ra.methods, "comma list from none,vd,vd+zne,vd+cut");
  run->add_option("--graph", ra.graph, "ring:n or file:path");
  run->add_option("--map", ra.map, "coupling map spec");
  run->add_option("--workers", ra.workers, "worker threads");

  std::string ov_map = "heavyhex:7", ov_qubits = "4..12", ov_layers = "2,4,8", ov_out;
  int ov_workers = 0;
  auto* ov = app.add_subcommand("overhead-sweep", "routed CNOT counts of VD against the original");
  ov->add_option("--map", ov_map, "full, linear, heavyhex:d or file:path");
  ov->add_option("--qubits", ov_qubits, "a..b or comma list");
  ov->add_option("--layers", ov_layers, "a..b or comma list");
  ov->add_option("--out", ov_out, "CSV path (stdout if omitted)");
  ov->add_option("--workers", ov_workers, "worker threads");

  std::string op_config, op_graph, op_out;
  int op_reps = -1;
  std::uint64_t op_seed = 0;
  auto* op = app.add_subcommand("optimize", "noiseless parameter search");
  op->add_option("--config", op_config, "JSON config file");
  op->add_option("--graph", op_graph, "ring:n or file:path");
  op->add_option("--reps", op_reps, "ansatz repetitions");
  op->add_option("--seed", op_seed, "optimizer seed");
  op->add_option("--out", op_out, "parameter file");

  std::string cc_config, cc_graph;
  std::uint64_t cc_seed = 0;
  auto* cc = app.add_subcommand("cut-check", "exact cutting-identity self-test");
  cc->add_option("--config", cc_config, "JSON config file");
  cc->add_option("--graph", cc_graph, "ring:n or file:path");
  cc->add_option("--seed", cc_seed, "optimizer seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*run) return cmd_run(ra, *run);
    if (*ov) return cmd_overhead(ov_map, ov_qubits, ov_layers, ov_out, ov_workers);
    if (*op) return cmd_optimize(op_config, op_graph, op_reps, op_seed, op->count("--seed") > 0, op_out);
    if (*cc) return cmd_cut_check(cc_config, cc_graph, cc_seed, cc->count("--seed") > 0);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
  return kOk;
}
