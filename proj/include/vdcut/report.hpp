#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vdcut/experiment.hpp"

namespace vdcut {

inline constexpr const char* kCsvHeader = "method,cnot,rzz,expectation,abs_error";

namespace report_detail {

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + std::to_string(v[k]);
  return s;
}

inline nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
inline double number(const nlohmann::json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

}  // namespace report_detail

/// Table rows of one preset; lists (one entry per ZNE scale) are ';'-separated.
inline std::string to_csv(const ExperimentResult& r, const std::string& preset) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& c : r.cells) {
    if (c.preset != preset) continue;
    out << c.method << "," << report_detail::join(c.cnot) << "," << report_detail::join(c.rzz) << ","
        << (c.ok ? detail::fmt17(c.expectation) : "nan") << "," << (c.ok ? detail::fmt17(c.abs_error) : "nan") << "\n";
  }
  return out.str();
}

inline nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json j;
  j["config"] = r.config;
  j["parameters"] = r.parameters;
  j["ideal"] = r.ideal;
  j["noiseless_diag"] = nlohmann::json::object();
  for (const auto& [k, v] : r.noiseless_diag) j["noiseless_diag"][k] = report_detail::number(v);
  j["noise"] = r.noise;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : r.cells) {
    nlohmann::json cj{{"method", c.method},
                      {"preset", c.preset},
                      {"ok", c.ok},
                      {"error", c.error},
                      {"expectation", report_detail::number(c.expectation)},
                      {"abs_error", report_detail::number(c.abs_error)},
                      {"cnot", c.cnot},
                      {"rzz", c.rzz},
                      {"seed", c.seed},
                      {"fragments", nlohmann::json::array()}};
    for (const auto& f : c.fragments) cj["fragments"].push_back({{"label", f.label}, {"cnot", f.cnots}, {"rzz", f.rzz}});
    if (r.config.record_timing) cj["wall_ms"] = c.wall_ms;
    j["cells"].push_back(std::move(cj));
  }
  return j;
}

inline ExperimentResult result_from_json(const nlohmann::json& j) {
  ExperimentResult r;
  r.config = config_from_json(j.at("config"));
  r.parameters = j.at("parameters").get<std::vector<double>>();
  r.ideal = j.at("ideal").get<double>();
  for (const auto& [k, v] : j.at("noiseless_diag").items()) r.noiseless_diag[k] = report_detail::number(v);
  for (const auto& [k, v] : j.at("noise").items()) r.noise[k] = v;
  for (const auto& cj : j.at("cells")) {
    ExperimentCell c;
    c.method = cj.at("method").get<std::string>();
    c.preset = cj.at("preset").get<std::string>();
    c.ok = cj.at("ok").get<bool>();
    c.error = cj.at("error").get<std::string>();
    c.expectation = report_detail::number(cj.at("expectation"));
    c.abs_error = report_detail::number(cj.at("abs_error"));
    c.cnot = cj.at("cnot").get<std::vector<std::size_t>>();
    c.rzz = cj.at("rzz").get<std::vector<std::size_t>>();
    c.seed = cj.at("seed").get<std::uint64_t>();
    for (const auto& f : cj.at("fragments"))
      c.fragments.push_back({f.at("label").get<std::string>(), f.at("cnot").get<std::size_t>(), f.at("rzz").get<std::size_t>()});
    c.wall_ms = cj.value("wall_ms", 0.0);
    r.cells.push_back(std::move(c));
  }
  return r;
}

/// Writes <prefix>.json and one CSV per preset (<prefix>.csv when there is only one).
inline std::vector<std::string> emit(const ExperimentResult& r, const std::string& prefix) {
  std::vector<std::string> written;
  auto write = [&](const std::string& path, const std::string& text) {
    std::ofstream f(path);
    require(f.good(), "cannot write " + path);
    f << text;
    written.push_back(path);
  };
  const auto& presets = r.config.noise;
  for (const auto& p : presets) write(presets.size() == 1 ? prefix + ".csv" : prefix + "." + p + ".csv", to_csv(r, p));
  write(prefix + ".json", to_json(r).dump(2) + "\n");
  return written;
}

}  // namespace vdcut
