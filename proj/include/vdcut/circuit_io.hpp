#pragma once

// Line-oriented circuit text format:
//
//   qubits N
//   name <free text>            (optional)
//   KIND q0[,q1][,angle][,#tag]
//
// Angles are printed with 17 significant digits so a round trip is exact.
// U2 (explicit two-qubit unitary) lines carry the 16 matrix entries row-major as
// re,im pairs in place of the angle. Blank lines and lines starting with "//"
// are ignored.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vdcut/circuit.hpp"

namespace vdcut {

namespace detail {
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("malformed number '" + s + "'");
  }
  if (used != s.size()) throw Error("malformed number '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw Error("malformed integer '" + s + "'");
  }
  if (used != s.size()) throw Error("malformed integer '" + s + "'");
  return v;
}
}  // namespace detail

inline std::string to_text(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.width() << "\n";
  if (!c.name().empty()) out << "name " << c.name() << "\n";
  for (const auto& g : c) {
    out << kind_name(g.kind()) << " " << g.qubit(0);
    if (g.arity() == 2) out << "," << g.qubit(1);
    if (g.maybe_angle()) out << "," << detail::fmt17(g.angle());
    if (g.kind() == GateKind::TwoQubitUnitary) {
      const Mat4& u = g.explicit_unitary();
      for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) out << "," << detail::fmt17(u(r, k).real()) << "," << detail::fmt17(u(r, k).imag());
    }
    if (!g.tag().empty()) out << ",#" << g.tag();
    out << "\n";
  }
  return out.str();
}

inline Circuit from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Circuit> circuit;
  std::string name;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line.rfind("//", 0) == 0) continue;
    const auto sp = line.find(' ');
    const std::string head = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? std::string{} : detail::trim(line.substr(sp + 1));
    try {
      if (head == "qubits") {
        require(!circuit, "duplicate qubits header");
        circuit.emplace(detail::parse_int(rest), name);
        continue;
      }
      if (head == "name") {
        name = rest;
        if (circuit) circuit->set_name(name);
        continue;
      }
      require(circuit.has_value(), "gate before 'qubits N' header");
      const GateKind kind = kind_from_name(head);
      auto fields = detail::split(rest, ',');
      std::string tag;
      if (!fields.empty() && !fields.back().empty() && fields.back()[0] == '#') {
        tag = fields.back().substr(1);
        fields.pop_back();
      }
      const int arity = kind_arity(kind);
      require(static_cast<int>(fields.size()) >= arity, "missing qubit indices");
      std::array<int, 2> q{detail::parse_int(fields[0]), arity == 2 ? detail::parse_int(fields[1]) : -1};
      std::optional<double> angle;
      std::optional<Mat4> u;
      std::size_t next = static_cast<std::size_t>(arity);
      if (takes_angle(kind)) {
        require(fields.size() == next + 1, "expected exactly one angle");
        angle = detail::parse_double(fields[next]);
      } else if (kind == GateKind::TwoQubitUnitary) {
        require(fields.size() == next + 32, "U2 expects 32 matrix components");
        Mat4 m;
        for (int r = 0; r < 4; ++r)
          for (int k = 0; k < 4; ++k) {
            const double re = detail::parse_double(fields[next++]);
            const double im = detail::parse_double(fields[next++]);
            m(r, k) = cplx(re, im);
          }
        u = m;
      } else {
        require(fields.size() == next, "unexpected trailing fields");
      }
      circuit->push(Gate::make(kind, q, angle, u, tag));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  require(circuit.has_value(), "missing 'qubits N' header");
  return *circuit;
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open circuit file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

inline void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot write circuit file " + path);
  out << to_text(c);
}

}  // namespace vdcut
