#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vdcut/circuit_io.hpp"
#include "vdcut/optimizer.hpp"
#include "vdcut/pairwise.hpp"
#include "vdcut/parallel.hpp"
#include "vdcut/zne.hpp"

namespace vdcut {

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> m{"none", "vd", "vd+zne", "vd+cut"};
  return m;
}

struct ExperimentConfig {
  std::string graph = "ring:4";  // "ring:n" or "file:path"
  std::string circuit_file;      // replaces the ansatz when set
  int reps = 2;
  std::string entanglement = "circular";
  std::string parameters = "optimize";  // "optimize", "file:path" or "explicit"
  std::vector<double> parameter_values;
  std::vector<std::string> noise{"basic"};  // preset names or "file:path"
  std::vector<std::string> methods{"none", "vd", "vd+zne", "vd+cut"};
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  std::string coupling_map = "heavyhex:3";
  std::string output = "results";
  int workers = 1;
  bool record_timing = true;

  void validate() const {
    if (methods.empty()) throw ConfigError("config: methods list is empty");
    for (const auto& m : methods)
      if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
        throw ConfigError("config: unknown method '" + m + "'");
    if (noise.empty()) throw ConfigError("config: noise list is empty");
    static const std::vector<std::string> presets{"noiseless", "basic", "basic+gct", "basic+gct+rct"};
    for (const auto& p : noise)
      if (p.rfind("file:", 0) != 0 && std::find(presets.begin(), presets.end(), p) == presets.end())
        throw ConfigError("config: unknown noise preset '" + p + "'");
    if (circuit_file.empty() && graph.rfind("ring:", 0) != 0 && graph.rfind("file:", 0) != 0)
      throw ConfigError("config: unknown graph spec '" + graph + "'");
    if (parameters != "optimize" && parameters != "explicit" && parameters.rfind("file:", 0) != 0)
      throw ConfigError("config: unknown parameter source '" + parameters + "'");
    if (shots < 1) throw ConfigError("config: shots must be at least 1");
    if (reps < 0) throw ConfigError("config: reps must be non-negative");
    if (workers < 1) throw ConfigError("config: workers must be at least 1");
  }
};

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = {{"graph", c.graph},       {"circuit", c.circuit_file}, {"reps", c.reps},
       {"entanglement", c.entanglement}, {"parameters", c.parameters}, {"parameter_values", c.parameter_values},
       {"noise", c.noise},       {"methods", c.methods},      {"shots", c.shots},
       {"seed", c.seed},         {"coupling_map", c.coupling_map}, {"output", c.output},
       {"workers", c.workers},   {"record_timing", c.record_timing}};
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.graph = j.value("graph", c.graph);
    c.circuit_file = j.value("circuit", c.circuit_file);
    c.reps = j.value("reps", c.reps);
    c.entanglement = j.value("entanglement", c.entanglement);
    if (j.contains("parameters")) {
      if (j["parameters"].is_array()) {
        c.parameters = "explicit";
        c.parameter_values = j["parameters"].get<std::vector<double>>();
      } else {
        c.parameters = j["parameters"].get<std::string>();
      }
    }
    if (j.contains("parameter_values")) c.parameter_values = j["parameter_values"].get<std::vector<double>>();
    if (j.contains("noise")) {
      if (j["noise"].is_string())
        c.noise = {j["noise"].get<std::string>()};
      else
        c.noise = j["noise"].get<std::vector<std::string>>();
    }
    if (j.contains("methods")) c.methods = j["methods"].get<std::vector<std::string>>();
    c.shots = j.value("shots", c.shots);
    c.seed = j.value("seed", c.seed);
    c.coupling_map = j.value("coupling_map", c.coupling_map);
    c.output = j.value("output", c.output);
    c.workers = j.value("workers", c.workers);
    c.record_timing = j.value("record_timing", c.record_timing);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f.good()) throw ConfigError("config: cannot open " + path);
  try {
    return config_from_json(nlohmann::json::parse(f, nullptr, true, true));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline MaxCutProblem problem_from_spec(const std::string& spec) {
  if (spec.rfind("ring:", 0) == 0) return MaxCutProblem::ring(std::stoi(spec.substr(5)));
  if (spec.rfind("file:", 0) == 0) return MaxCutProblem::load(spec.substr(5));
  throw ConfigError("unknown graph spec '" + spec + "'");
}

inline NoiseModel noise_from_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_noise_model(spec.substr(5));
  return NoiseModel::preset(spec);
}

inline std::vector<double> read_parameters(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open parameter file " + path);
  std::vector<double> v;
  std::string tok;
  while (f >> tok) {
    if (tok[0] == '#') {
      std::getline(f, tok);
      continue;
    }
    v.push_back(detail::parse_double(tok));
  }
  return v;
}

inline void write_parameters(const std::vector<double>& v, const std::string& path) {
  std::ofstream f(path);
  require(f.good(), "cannot write parameter file " + path);
  for (double x : v) f << detail::fmt17(x) << "\n";
}

struct ExperimentCell {
  std::string method;
  std::string preset;
  bool ok = false;
  std::string error;
  double expectation = std::nan("");
  double abs_error = std::nan("");
  std::vector<std::size_t> cnot;
  std::vector<std::size_t> rzz;
  std::vector<FragmentStats> fragments;
  std::uint64_t seed = 0;
  double wall_ms = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<double> parameters;
  double ideal = 0;
  std::map<std::string, double> noiseless_diag;  // per preset
  std::map<std::string, nlohmann::json> noise;   // per preset
  std::vector<ExperimentCell> cells;

  const ExperimentCell& cell(const std::string& method, const std::string& preset) const {
    for (const auto& c : cells)
      if (c.method == method && c.preset == preset) return c;
    throw Error("no cell for " + method + " / " + preset);
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const ExperimentCell& c) { return !c.ok; }));
  }
};

inline std::uint64_t cell_seed(std::uint64_t seed, const std::string& method, const std::string& preset) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : method + "|" + preset) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  return splitmix64(seed ^ h);
}

/// The benchmark circuit described by a config (parameters optimized if requested).
inline Circuit benchmark_circuit(const ExperimentConfig& cfg, const MaxCutProblem& problem, std::vector<double>* params = nullptr) {
  if (!cfg.circuit_file.empty()) {
    Circuit c = load_circuit(cfg.circuit_file).without_measurements();
    require(c.width() == problem.n, "circuit width differs from graph size");
    return c;
  }
  const RealAmplitudes ansatz(problem.n, cfg.reps, entanglement_from_name(cfg.entanglement));
  std::vector<double> theta;
  if (cfg.parameters == "optimize")
    theta = optimize_parameters(problem, ansatz, cfg.seed).x;
  else if (cfg.parameters == "explicit")
    theta = cfg.parameter_values;
  else if (cfg.parameters.rfind("file:", 0) == 0)
    theta = read_parameters(cfg.parameters.substr(5));
  else
    throw ConfigError("unknown parameter source '" + cfg.parameters + "'");
  if (static_cast<int>(theta.size()) != ansatz.num_parameters())
    throw ConfigError("expected " + std::to_string(ansatz.num_parameters()) + " parameters, got " + std::to_string(theta.size()));
  if (params) *params = theta;
  return ansatz.bind(theta);
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.config = cfg;
  const MaxCutProblem problem = problem_from_spec(cfg.graph);
  const PauliObservable h = maxcut_hamiltonian(problem);
  const Circuit circuit = benchmark_circuit(cfg, problem, &res.parameters);
  const int n = circuit.width();
  res.ideal = expectation(evolve_noiseless(circuit), h);
  const CouplingMap device = CouplingMap::from_spec(cfg.coupling_map, 2 * n);
  std::vector<NoiseModel> models;
  for (const auto& p : cfg.noise) {
    models.push_back(noise_from_spec(p));
    nlohmann::json j = models.back();
    res.noise[p] = j;
  }
  const Circuit vd = build_vd_circuit(circuit);

  // The uncut VD run is shared by vd and vd+cut cells of one preset.
  std::vector<std::shared_future<DeviceRun>> uncut(models.size());
  std::vector<std::promise<DeviceRun>> promises(models.size());
  std::vector<std::once_flag> once(models.size());
  for (std::size_t k = 0; k < models.size(); ++k) uncut[k] = promises[k].get_future().share();
  auto uncut_run = [&](std::size_t k) -> const DeviceRun& {
    std::call_once(once[k], [&] {
      try {
        promises[k].set_value(run_on_device(vd, device, models[k]));
      } catch (...) {
        promises[k].set_exception(std::current_exception());
      }
    });
    return uncut[k].get();
  };

  for (std::size_t k = 0; k < models.size(); ++k)
    for (const auto& m : cfg.methods) res.cells.push_back({m, cfg.noise[k]});
  std::vector<double> references(models.size(), std::nan(""));

  const std::size_t cells = res.cells.size();
  parallel_for(cells + models.size(), cfg.workers, [&](std::size_t idx) {
    if (idx >= cells) {
      const std::size_t k = idx - cells;
      try {
        NoiseModel clean_diag = models[k];
        clean_diag.ideal_tags.insert(std::string(tags::kDiag));
        references[k] = estimate_from_distribution(run_on_device(vd, device, clean_diag).dist, h).value();
      } catch (const std::exception&) {
      }
      return;
    }
    ExperimentCell& cell = res.cells[idx];
    const std::size_t k = idx / cfg.methods.size();
    const NoiseModel& nm = models[k];
    cell.seed = cell_seed(cfg.seed, cell.method, cell.preset);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (cell.method == "none") {
        Circuit c = circuit;
        for (int q = 0; q < n; ++q) c.push(Gate::measure(q));
        const DeviceRun dr = run_on_device(c, device, nm);
        cell.expectation = expectation(sample(dr.dist, cfg.shots, cell.seed).frequencies(), h);
        cell.cnot = {dr.cnots};
        cell.rzz = {dr.rzz};
      } else if (cell.method == "vd") {
        const DeviceRun& dr = uncut_run(k);
        cell.cnot = {dr.cnots};
        cell.rzz = {dr.rzz};
        cell.expectation = estimate_from_distribution(sample(dr.dist, cfg.shots, cell.seed).frequencies(), h, cfg.shots).value();
      } else if (cell.method == "vd+zne") {
        const ZNEResult z = mitigated_expectation_zne(circuit, h, nm, device, cfg.shots, cell.seed);
        cell.expectation = z.value;
        for (const auto& d : z.devices) {
          cell.cnot.push_back(d.cnots);
          cell.rzz.push_back(d.rzz);
        }
      } else {
        CutRunOptions opt;
        opt.shots = cfg.shots;
        opt.seed = cell.seed;
        opt.uncut = &uncut_run(k);
        const CutRunResult r = mitigated_expectation_cut(circuit, h, nm, device, opt);
        cell.fragments = r.fragments;
        std::size_t mc = 0, mr = 0;
        for (const auto& f : r.fragments) {
          mc = std::max(mc, f.cnots);
          mr = std::max(mr, f.rzz);
        }
        cell.cnot = {mc};
        cell.rzz = {mr};
        cell.expectation = r.estimate.value();
      }
      cell.abs_error = std::abs(cell.expectation - res.ideal);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
    cell.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });
  for (std::size_t k = 0; k < models.size(); ++k) res.noiseless_diag[cfg.noise[k]] = references[k];
  return res;
}

}  // namespace vdcut
