#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "vdcut/circuit.hpp"
#include "vdcut/distribution.hpp"
#include "vdcut/simulator.hpp"

namespace vdcut {

/// The wire of `qubit` is severed after op `position` (-1 = before the first op).
struct CutPoint {
  int qubit = 0;
  long position = -1;
};

enum class CutBasis { X = 0, Y = 1, Z = 2 };
enum class CutPrep { Zero = 0, One = 1, Plus = 2, PlusI = 3 };
enum class FragmentRole { Measure, Prepare };

inline const char* basis_name(CutBasis b) {
  switch (b) {
    case CutBasis::X: return "X";
    case CutBasis::Y: return "Y";
    default: return "Z";
  }
}

inline const char* prep_name(CutPrep p) {
  switch (p) {
    case CutPrep::Zero: return "0";
    case CutPrep::One: return "1";
    case CutPrep::Plus: return "+";
    default: return "+i";
  }
}

struct FragmentJob {
  FragmentRole role = FragmentRole::Measure;
  std::vector<CutBasis> bases;  // one per cut (measure side)
  std::vector<CutPrep> preps;   // one per cut (prepare side)
  Circuit circuit;              // measured; measure side bits = upstream outputs, then cut bits
  bool noisy = true;            // false: runs on the noiseless classical simulator
};

/// One product term: coeff * J[bases](outputs, cut bits weighted by +-1 where signed) * K[preps].
struct ReconstructionTerm {
  double coeff = 1.0;
  std::vector<CutBasis> bases;
  std::vector<bool> signed_outcome;
  std::vector<CutPrep> preps;
};

struct ReconstructionPlan {
  std::vector<CutPoint> cuts;
  int output_width = 0;
  std::vector<int> upstream_bits;    // output bit positions produced by the measure side, in its bit order
  std::vector<int> downstream_bits;  // output bit positions produced by the prepare side
  std::vector<ReconstructionTerm> terms;

  std::size_t measure_variants() const { return static_cast<std::size_t>(std::pow(3, cuts.size())); }
  std::size_t prepare_variants() const { return static_cast<std::size_t>(std::pow(4, cuts.size())); }

  static std::size_t measure_index(const std::vector<CutBasis>& b) {
    std::size_t k = 0;
    for (std::size_t c = b.size(); c-- > 0;) k = 3 * k + static_cast<std::size_t>(b[c]);
    return k;
  }
  static std::size_t prepare_index(const std::vector<CutPrep>& p) {
    std::size_t k = 0;
    for (std::size_t c = p.size(); c-- > 0;) k = 4 * k + static_cast<std::size_t>(p[c]);
    return k;
  }
};

struct CutDecomposition {
  std::vector<FragmentJob> measure_jobs;  // indexed by ReconstructionPlan::measure_index
  std::vector<FragmentJob> prepare_jobs;  // indexed by ReconstructionPlan::prepare_index
  ReconstructionPlan plan;
  Circuit upstream;    // unmeasured upstream gates
  Circuit downstream;  // unmeasured downstream gates
};

namespace cut_detail {

/// The ten single-cut terms: I from summed Z outcomes, |-> and |-i> eliminated via I - |+><+|.
inline std::vector<ReconstructionTerm> single_cut_terms() {
  using B = CutBasis;
  using P = CutPrep;
  auto t = [](double c, B b, bool s, P p) { return ReconstructionTerm{c, {b}, {s}, {p}}; };
  return {t(0.5, B::Z, false, P::Zero), t(0.5, B::Z, false, P::One),  t(0.5, B::Z, true, P::Zero),
          t(-0.5, B::Z, true, P::One),  t(1.0, B::X, true, P::Plus),  t(-0.5, B::X, true, P::Zero),
          t(-0.5, B::X, true, P::One),  t(1.0, B::Y, true, P::PlusI), t(-0.5, B::Y, true, P::Zero),
          t(-0.5, B::Y, true, P::One)};
}

inline std::vector<ReconstructionTerm> product_terms(std::size_t cuts) {
  std::vector<ReconstructionTerm> out{ReconstructionTerm{1.0, {}, {}, {}}};
  const auto single = single_cut_terms();
  for (std::size_t c = 0; c < cuts; ++c) {
    std::vector<ReconstructionTerm> next;
    next.reserve(out.size() * single.size());
    for (const auto& a : out)
      for (const auto& s : single) {
        ReconstructionTerm t = a;
        t.coeff *= s.coeff;
        t.bases.push_back(s.bases[0]);
        t.signed_outcome.push_back(s.signed_outcome[0]);
        t.preps.push_back(s.preps[0]);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

inline void basis_change(Circuit& c, int q, CutBasis b) {
  if (b == CutBasis::X) {
    c.push(Gate::h(q));
  } else if (b == CutBasis::Y) {
    c.push(Gate::rz(q, -kPi / 2));
    c.push(Gate::h(q));
  }
}

inline void prepare(Circuit& c, int q, CutPrep p) {
  switch (p) {
    case CutPrep::Zero: break;
    case CutPrep::One: c.push(Gate::x(q)); break;
    case CutPrep::Plus: c.push(Gate::h(q)); break;
    case CutPrep::PlusI:
      c.push(Gate::h(q));
      c.push(Gate::rz(q, kPi / 2));
      break;
  }
}

template <typename T>
std::vector<std::vector<T>> all_tuples(std::size_t cuts, int alphabet) {
  std::vector<std::vector<T>> out;
  const auto total = static_cast<std::size_t>(std::pow(alphabet, cuts));
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<T> v(cuts);
    std::size_t r = k;
    for (std::size_t c = 0; c < cuts; ++c) {
      v[c] = static_cast<T>(r % static_cast<std::size_t>(alphabet));
      r /= static_cast<std::size_t>(alphabet);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace cut_detail

/// Splits `circuit` at the given wire cuts. The downstream side is the forward
/// closure of the severed wire segments; everything else is upstream. Measured
/// qubits define the output bits (all qubits in index order when unmeasured).
inline CutDecomposition cut_wires(const Circuit& circuit, const std::vector<CutPoint>& cuts,
                                  bool prepare_side_classical = false) {
  require(!cuts.empty(), "cut_wires: no cut points");
  const Circuit body = circuit.without_measurements();
  const int n = circuit.width();
  std::vector<int> outputs = circuit.measured_qubits();
  if (outputs.empty())
    for (int q = 0; q < n; ++q) outputs.push_back(q);

  std::set<int> cut_qubits;
  for (const auto& c : cuts) {
    require(c.qubit >= 0 && c.qubit < n, "cut_wires: cut qubit out of range");
    require(c.position >= -1 && c.position < static_cast<long>(body.size()), "cut_wires: cut position out of range");
    require(cut_qubits.insert(c.qubit).second, "cut_wires: two cuts on one wire");
  }
  auto severed_after = [&](int q, std::size_t i) {
    for (const auto& c : cuts)
      if (c.qubit == q) return static_cast<long>(i) > c.position;
    return false;
  };

  std::vector<bool> live(static_cast<std::size_t>(n), false), down(body.size(), false);
  for (std::size_t i = 0; i < body.size(); ++i) {
    const Gate& g = body[i];
    bool hit = false;
    for (int k = 0; k < g.arity(); ++k) hit = hit || live[static_cast<std::size_t>(g.qubit(k))] || severed_after(g.qubit(k), i);
    if (!hit) continue;
    down[i] = true;
    for (int k = 0; k < g.arity(); ++k) live[static_cast<std::size_t>(g.qubit(k))] = true;
  }

  std::set<int> up_q, down_q;
  for (std::size_t i = 0; i < body.size(); ++i)
    for (int k = 0; k < body[i].arity(); ++k) (down[i] ? down_q : up_q).insert(body[i].qubit(k));
  for (const auto& c : cuts) {
    bool has_down = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!body[i].acts_on(c.qubit)) continue;
      const bool after = static_cast<long>(i) > c.position;
      require(after == down[i], "cut_wires: wire " + std::to_string(c.qubit) + " re-enters the upstream side");
      has_down = has_down || after;
    }
    require(has_down, "cut_wires: vacuous cut on qubit " + std::to_string(c.qubit) + " (no downstream gates)");
  }
  for (int q : up_q)
    require(!down_q.count(q) || cut_qubits.count(q),
            "cut_wires: qubit " + std::to_string(q) + " crosses between fragments without a cut");

  CutDecomposition out;
  out.upstream = Circuit(n, circuit.name() + "-up");
  out.downstream = Circuit(n, circuit.name() + "-down");
  for (std::size_t i = 0; i < body.size(); ++i) (down[i] ? out.downstream : out.upstream).push(body[i]);

  ReconstructionPlan& plan = out.plan;
  plan.cuts = cuts;
  plan.output_width = static_cast<int>(outputs.size());
  std::vector<int> up_out, down_out;
  for (std::size_t b = 0; b < outputs.size(); ++b) {
    const bool is_down = down_q.count(outputs[b]) > 0;
    (is_down ? plan.downstream_bits : plan.upstream_bits).push_back(static_cast<int>(b));
    (is_down ? down_out : up_out).push_back(outputs[b]);
  }
  plan.terms = cut_detail::product_terms(cuts.size());

  for (const auto& bases : cut_detail::all_tuples<CutBasis>(cuts.size(), 3)) {
    FragmentJob job{FragmentRole::Measure, bases, {}, out.upstream, true};
    job.circuit.set_name(circuit.name() + "-j");
    for (std::size_t c = 0; c < cuts.size(); ++c) cut_detail::basis_change(job.circuit, cuts[c].qubit, bases[c]);
    for (int q : up_out) job.circuit.push(Gate::measure(q));
    for (const auto& c : cuts) job.circuit.push(Gate::measure(c.qubit));
    out.measure_jobs.push_back(std::move(job));
  }
  for (const auto& preps : cut_detail::all_tuples<CutPrep>(cuts.size(), 4)) {
    FragmentJob job{FragmentRole::Prepare, {}, preps, Circuit(n, circuit.name() + "-k"), !prepare_side_classical};
    for (std::size_t c = 0; c < cuts.size(); ++c) cut_detail::prepare(job.circuit, cuts[c].qubit, preps[c]);
    for (const auto& g : out.downstream) job.circuit.push(g);
    for (int q : down_out) job.circuit.push(Gate::measure(q));
    out.prepare_jobs.push_back(std::move(job));
  }
  return out;
}

inline CutDecomposition cut_wire(const Circuit& circuit, const CutPoint& cut, bool prepare_side_classical = false) {
  return cut_wires(circuit, {cut}, prepare_side_classical);
}

/// Negativity tolerance for stitched distributions.
inline double clamp_epsilon(std::uint64_t shots) {
  return shots == 0 ? 1e-9 : 10.0 / std::sqrt(static_cast<double>(shots));
}

/// Linear recombination of fragment results with fixed term order.
inline Distribution reconstruct(const ReconstructionPlan& plan, const std::vector<Distribution>& measure_results,
                                const std::vector<Distribution>& prepare_results, double epsilon = 1e-9) {
  const std::size_t cuts = plan.cuts.size();
  require(measure_results.size() == plan.measure_variants(), "reconstruct: missing measure-side results");
  require(prepare_results.size() == plan.prepare_variants(), "reconstruct: missing prepare-side results");
  const int nu = static_cast<int>(plan.upstream_bits.size());
  const int nd = static_cast<int>(plan.downstream_bits.size());
  for (const auto& d : measure_results)
    require(d.width() == nu + static_cast<int>(cuts), "reconstruct: measure-side width mismatch");
  for (const auto& d : prepare_results) require(d.width() == nd, "reconstruct: prepare-side width mismatch");

  const std::size_t du = std::size_t{1} << nu, dd = std::size_t{1} << nd;
  std::vector<double> joint(du * dd, 0.0);  // index = xu | (xd << nu)
  std::vector<double> jv(du);
  for (const auto& t : plan.terms) {
    const Distribution& j = measure_results[ReconstructionPlan::measure_index(t.bases)];
    const Distribution& k = prepare_results[ReconstructionPlan::prepare_index(t.preps)];
    std::fill(jv.begin(), jv.end(), 0.0);
    for (std::uint64_t x = 0; x < j.size(); ++x) {
      const std::uint64_t xu = x & (du - 1), s = x >> nu;
      double sign = 1.0;
      for (std::size_t c = 0; c < cuts; ++c)
        if (t.signed_outcome[c] && ((s >> c) & 1U)) sign = -sign;
      jv[xu] += sign * j[x];
    }
    for (std::size_t xd = 0; xd < dd; ++xd) {
      const double kv = t.coeff * k[xd];
      if (kv == 0.0) continue;
      for (std::size_t xu = 0; xu < du; ++xu) joint[xu | (xd << nu)] += kv * jv[xu];
    }
  }

  std::vector<double> out(std::size_t{1} << plan.output_width, 0.0);
  for (std::size_t x = 0; x < joint.size(); ++x) {
    double v = joint[x];
    if (v < -epsilon)
      throw Error("reconstruct: probability " + std::to_string(v) + " below clamping threshold " + std::to_string(-epsilon));
    if (v < 0) v = 0;
    std::uint64_t y = 0;
    for (int b = 0; b < nu; ++b)
      if ((x >> b) & 1U) y |= std::uint64_t{1} << plan.upstream_bits[static_cast<std::size_t>(b)];
    for (int b = 0; b < nd; ++b)
      if ((x >> (nu + b)) & 1U) y |= std::uint64_t{1} << plan.downstream_bits[static_cast<std::size_t>(b)];
    out[y] += v;
  }
  return Distribution::normalized(plan.output_width, std::move(out));
}

/// Exact distribution of one fragment. A prepare side without output bits yields the
/// trivial width-0 distribution.
inline Distribution run_fragment(const FragmentJob& job, const NoiseModel& noise) {
  if (!job.circuit.has_measurements()) return Distribution(0, {1.0});
  return run_exact(job.circuit, job.noisy ? noise : NoiseModel::ideal());
}

inline Distribution reconstruct_exact(const CutDecomposition& cut, const NoiseModel& noise = NoiseModel::ideal()) {
  std::vector<Distribution> j, k;
  for (const auto& job : cut.measure_jobs) j.push_back(run_fragment(job, noise));
  for (const auto& job : cut.prepare_jobs) k.push_back(run_fragment(job, noise));
  return reconstruct(cut.plan, j, k);
}

/// TV distance between the stitched and the uncut noiseless distribution.
inline double cut_identity_error(const Circuit& circuit, const std::vector<CutPoint>& cuts) {
  Circuit measured = circuit;
  if (!measured.has_measurements())
    for (int q = 0; q < circuit.width(); ++q) measured.push(Gate::measure(q));
  return tv_distance(reconstruct_exact(cut_wires(measured, cuts)), run_exact(measured, NoiseModel::ideal()));
}

}  // namespace vdcut
