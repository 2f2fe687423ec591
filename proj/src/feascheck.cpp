#include "ogpf/feascheck.hpp"

#include <algorithm>
#include <cmath>

namespace ogpf {
namespace {

class Checker {
 public:
  void at_most(double lhs, double rhs, const std::string& what) {
    note(lhs - rhs, what);
  }
  void equal(double lhs, double rhs, const std::string& what) {
    note(std::abs(lhs - rhs), what);
  }
  void binary(double v, const std::string& what) {
    note(std::min(std::abs(v), std::abs(v - 1.0)), what);
  }
  FeasibilityReport report;

 private:
  void note(double v, const std::string& what) {
    ++report.checks;
    if (v > report.max_violation) {
      report.max_violation = v;
      report.worst = what;
    }
  }
};

}  // namespace

FeasibilityReport check_feasibility(const NetworkInstance& inst, const BuildResult& build,
                                    std::span<const double> x) {
  Checker ck;
  const VarIndex& ix = build.index;
  const EdgeClassification& edges = build.edges;
  const int r = build.config.r;
  const double eps = build.config.epsilon;
  auto val = [&](VarKind k, int owner, int region = -1) { return x[ix.col(k, owner, region)]; };
  auto in_box = [&](double v, double lo, double hi, const std::string& what) {
    ck.at_most(lo, v, what + " lower");
    ck.at_most(v, hi, what + " upper");
  };

  std::vector<double> injection(inst.buses.size(), 0.0);
  std::vector<double> gas_net(inst.gas_nodes.size(), 0.0);
  for (int g = 0; g < static_cast<int>(inst.generators.size()); ++g) {
    const Generator& gen = inst.generators[g];
    const double p = val(VarKind::kPower, g);
    const double d = val(VarKind::kGasUse, g);
    in_box(p, gen.p_min, gen.p_max, "p " + gen.id);
    injection[inst.bus_index(gen.bus)] += p;
    if (gen.gas_fueled()) {
      const QuadraticCoeffs& e = *gen.conversion;
      ck.at_most(e.c2 * p * p + e.c1 * p + e.c0, d, "gas conversion " + gen.id);
      gas_net[inst.node_index(*gen.gas_node)] -= d;
    } else {
      ck.equal(d, 0.0, "no gas use " + gen.id);
    }
  }
  for (int b = 0; b < static_cast<int>(inst.buses.size()); ++b) {
    in_box(val(VarKind::kAngle, b), inst.buses[b].theta_min, inst.buses[b].theta_max,
           "theta " + inst.buses[b].id);
  }
  for (const PowerLine& line : inst.lines) {
    const int i = inst.bus_index(line.from), j = inst.bus_index(line.to);
    const double flow = (val(VarKind::kAngle, i) - val(VarKind::kAngle, j)) / line.reactance;
    injection[i] -= flow;
    injection[j] += flow;
  }
  for (int b = 0; b < static_cast<int>(inst.buses.size()); ++b) {
    ck.equal(injection[b], inst.buses[b].demand_e, "power balance " + inst.buses[b].id);
  }

  for (int s = 0; s < static_cast<int>(inst.gas_sources.size()); ++s) {
    const GasSource& src = inst.gas_sources[s];
    const double g = val(VarKind::kSupply, s);
    in_box(g, src.g_min, src.g_max, "supply " + src.id);
    gas_net[inst.node_index(src.node)] += g;
  }
  for (int n = 0; n < static_cast<int>(inst.gas_nodes.size()); ++n) {
    const GasNode& node = inst.gas_nodes[n];
    in_box(val(VarKind::kPressure, n), node.psi_min, node.psi_max, "psi " + node.id);
  }
  for (int t = 0; t < static_cast<int>(edges.tie_directed.size()); ++t) {
    const DirectedPipe& d = edges.tie_directed[t];
    const double phi = val(VarKind::kTieFlow, t);
    const double cap = inst.pipelines[d.pipe].flow_cap;
    in_box(phi, -cap, cap, "tie flow " + directed_name(inst, d));
    gas_net[d.from] -= phi;
    if (d.forward) {
      ck.equal(phi + val(VarKind::kTieFlow, t + 1), 0.0,
               "tie reciprocity " + directed_name(inst, d));
    }
  }

  for (int k = 0; k < static_cast<int>(edges.internal_directed.size()); ++k) {
    const DirectedPipe& d = edges.internal_directed[k];
    const Pipeline& pipe = inst.pipelines[d.pipe];
    const std::string name = directed_name(inst, d);
    const double cap = pipe.flow_cap;
    const double c2 = *pipe.weymouth_c * *pipe.weymouth_c;
    const double phi = val(VarKind::kFlow, k);
    const double psi_i = val(VarKind::kPressure, d.from);
    const double psi_j = val(VarKind::kPressure, d.to);
    const double dpsi = val(VarKind::kDeltaPsi, k);
    gas_net[d.from] -= phi;

    in_box(phi, -cap, cap, "flow " + name);
    ck.binary(dpsi, "integrality dpsi " + name);
    const bool positive = dpsi > 0.5;
    if (d.forward) {
      ck.equal(phi + val(VarKind::kFlow, k + 1), 0.0, "reciprocity " + name);
      ck.equal(dpsi + val(VarKind::kDeltaPsi, k + 1), 1.0, "sign link " + name);
    }
    if (positive) {
      ck.at_most(0.0, phi, "sign of flow " + name);
      ck.at_most(0.0, psi_i - psi_j, "sign of pressure drop " + name);
    } else {
      ck.at_most(phi, -eps, "sign of flow " + name);
      ck.at_most(psi_i - psi_j, -eps, "sign of pressure drop " + name);
    }
    ck.equal(val(VarKind::kAuxPsi, k), (positive ? 1.0 : 0.0) * psi_i, "aux psi " + name);

    double chord = 0.0;
    double active = 0.0;
    for (int m = 0; m < r; ++m) {
      const std::string tag = name + " region " + std::to_string(m + 1);
      const double lo = m == 0 ? -cap : cap * (2.0 * m - r) / r;
      const double hi = m == r - 1 ? cap : cap * (2.0 * (m + 1) - r) / r;
      const double al = val(VarKind::kAlpha, k, m);
      const double be = val(VarKind::kBeta, k, m);
      const double de = val(VarKind::kDelta, k, m);
      ck.binary(al, "integrality alpha " + tag);
      ck.binary(be, "integrality beta " + tag);
      ck.binary(de, "integrality delta " + tag);
      const bool a1 = al > 0.5, b1 = be > 0.5, d1 = de > 0.5;
      if (a1) {
        ck.at_most(phi, hi, "alpha logic " + tag);
      } else {
        ck.at_most(hi + eps, phi, "alpha logic " + tag);
      }
      if (b1) {
        ck.at_most(lo, phi, "beta logic " + tag);
      } else {
        ck.at_most(phi, lo - eps, "beta logic " + tag);
      }
      ck.equal(d1 ? 1.0 : 0.0, (a1 && b1) ? 1.0 : 0.0, "region logic " + tag);
      ck.equal(val(VarKind::kAuxFlow, k, m), (d1 ? 1.0 : 0.0) * phi, "aux flow " + tag);
      if (d1) {
        active += 1.0;
        chord += ((lo + hi) * phi - lo * hi) / c2;
      }
    }
    ck.equal(active, 1.0, "one active region " + name);
    ck.equal(chord, (positive ? 1.0 : -1.0) * (psi_i - psi_j), "pwa flow " + name);
  }
  for (int n = 0; n < static_cast<int>(inst.gas_nodes.size()); ++n) {
    ck.equal(gas_net[n], inst.gas_nodes[n].demand_g, "gas balance " + inst.gas_nodes[n].id);
  }
  return ck.report;
}

}  // namespace ogpf
