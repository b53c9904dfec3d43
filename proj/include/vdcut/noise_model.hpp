#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vdcut/error.hpp"
#include "vdcut/gate.hpp"
#include "vdcut/linalg.hpp"

namespace vdcut {

/// Row-stochastic confusion matrix, row = true outcome, column = reported outcome.
using Confusion2 = std::array<std::array<double, 2>, 2>;
using Confusion4 = std::array<std::array<double, 4>, 4>;

inline Confusion2 symmetric_confusion(double e) { return {{{1.0 - e, e}, {e, 1.0 - e}}}; }

inline Confusion4 default_readout_crosstalk() {
  Confusion4 m{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = r == c ? 0.991 : 0.003;
  return m;
}

struct NoiseModel {
  std::string name = "basic";
  bool noiseless = false;

  double p2 = 7.936e-3;  // two-qubit depolarizing rate
  double p1 = 0.0;       // one-qubit depolarizing rate
  double duration2 = 346.667e-9;
  double duration1 = 35.5e-9;
  double t1 = 120.385e-6;
  double t2 = 138.652e-6;

  Confusion2 readout = symmetric_confusion(1.2e-2);
  std::map<int, Confusion2> readout_per_qubit;  // overrides `readout`

  bool gate_crosstalk = false;
  double rzz_angle = -kPi / 3.5;
  bool readout_crosstalk = false;
  Confusion4 crosstalk_matrix = default_readout_crosstalk();

  /// Physically adjacent pairs expressed in circuit qubit indices.
  std::vector<std::pair<int, int>> adjacency;

  /// Gates carrying one of these tags are applied as ideal unitaries.
  std::set<std::string> ideal_tags{std::string(tags::kCrosstalk)};

  std::size_t max_qubits = 14;

  const Confusion2& confusion_for(int q) const {
    auto it = readout_per_qubit.find(q);
    return it == readout_per_qubit.end() ? readout : it->second;
  }

  bool is_ideal(const Gate& g) const { return noiseless || (!g.tag().empty() && ideal_tags.count(g.tag()) > 0); }

  void validate() const {
    auto rate = [](double v, const char* what) {
      require(std::isfinite(v) && v >= 0.0 && v <= 1.0, std::string(what) + " must lie in [0,1]");
    };
    rate(p2, "p2");
    rate(p1, "p1");
    require(duration1 >= 0.0 && duration2 >= 0.0, "gate durations must be non-negative");
    require(t1 > 0.0 && t2 > 0.0, "T1 and T2 must be positive");
    require(t2 <= 2.0 * t1, "T2 must not exceed 2*T1");
    auto stochastic2 = [](const Confusion2& m) {
      for (const auto& row : m) {
        require(row[0] >= 0.0 && row[1] >= 0.0, "confusion matrix entries must be non-negative");
        require(std::abs(row[0] + row[1] - 1.0) <= 1e-12, "confusion matrix rows must sum to 1");
      }
    };
    stochastic2(readout);
    for (const auto& [q, m] : readout_per_qubit) stochastic2(m);
    for (const auto& row : crosstalk_matrix) {
      double s = 0;
      for (double v : row) {
        require(v >= 0.0, "crosstalk matrix entries must be non-negative");
        s += v;
      }
      require(std::abs(s - 1.0) <= 1e-12, "crosstalk matrix rows must sum to 1");
    }
  }

  static NoiseModel ideal() {
    NoiseModel m;
    m.name = "noiseless";
    m.noiseless = true;
    m.readout = symmetric_confusion(0.0);
    return m;
  }

  /// Built-in presets: noiseless, basic, basic+gct, basic+gct+rct.
  static NoiseModel preset(const std::string& name) {
    if (name == "noiseless") return ideal();
    NoiseModel m;
    m.name = name;
    if (name == "basic") return m;
    if (name == "basic+gct") {
      m.gate_crosstalk = true;
      return m;
    }
    if (name == "basic+gct+rct") {
      m.gate_crosstalk = true;
      m.readout_crosstalk = true;
      return m;
    }
    throw Error("unknown noise preset '" + name + "'");
  }
};

inline void to_json(nlohmann::json& j, const NoiseModel& m) {
  j = nlohmann::json{{"name", m.name},
                     {"noiseless", m.noiseless},
                     {"p2", m.p2},
                     {"p1", m.p1},
                     {"duration2", m.duration2},
                     {"duration1", m.duration1},
                     {"t1", m.t1},
                     {"t2", m.t2},
                     {"readout", m.readout},
                     {"gate_crosstalk", m.gate_crosstalk},
                     {"rzz_angle", m.rzz_angle},
                     {"readout_crosstalk", m.readout_crosstalk},
                     {"crosstalk_matrix", m.crosstalk_matrix},
                     {"max_qubits", m.max_qubits}};
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [q, c] : m.readout_per_qubit) per[std::to_string(q)] = c;
  j["readout_per_qubit"] = per;
}

/// Reads keys mirroring the NoiseModel fields; an optional "preset" key selects the base.
inline NoiseModel noise_from_json(const nlohmann::json& j) {
  NoiseModel m = NoiseModel::preset(j.value("preset", std::string("basic")));
  try {
    if (j.contains("name")) m.name = j.at("name").get<std::string>();
    if (j.contains("noiseless")) m.noiseless = j.at("noiseless").get<bool>();
    if (j.contains("p2")) m.p2 = j.at("p2").get<double>();
    if (j.contains("p1")) m.p1 = j.at("p1").get<double>();
    if (j.contains("duration2")) m.duration2 = j.at("duration2").get<double>();
    if (j.contains("duration1")) m.duration1 = j.at("duration1").get<double>();
    if (j.contains("t1")) m.t1 = j.at("t1").get<double>();
    if (j.contains("t2")) m.t2 = j.at("t2").get<double>();
    if (j.contains("readout_error")) m.readout = symmetric_confusion(j.at("readout_error").get<double>());
    if (j.contains("readout")) m.readout = j.at("readout").get<Confusion2>();
    if (j.contains("readout_per_qubit"))
      for (const auto& [k, v] : j.at("readout_per_qubit").items()) m.readout_per_qubit[std::stoi(k)] = v.get<Confusion2>();
    if (j.contains("gate_crosstalk")) m.gate_crosstalk = j.at("gate_crosstalk").get<bool>();
    if (j.contains("rzz_angle")) m.rzz_angle = j.at("rzz_angle").get<double>();
    if (j.contains("readout_crosstalk")) m.readout_crosstalk = j.at("readout_crosstalk").get<bool>();
    if (j.contains("crosstalk_matrix")) m.crosstalk_matrix = j.at("crosstalk_matrix").get<Confusion4>();
    if (j.contains("max_qubits")) m.max_qubits = j.at("max_qubits").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("noise model: ") + e.what());
  }
  m.validate();
  return m;
}

inline NoiseModel load_noise_model(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open noise model file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("noise model " + path + ": " + e.what());
  }
  return noise_from_json(j);
}

}  // namespace vdcut
