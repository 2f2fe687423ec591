#include "ogpf/mipbuild.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ogpf/errors.hpp"

namespace ogpf {

int VarIndex::add(VarKey key) {
  auto [it, inserted] = pos_.emplace(key, size());
  assert(inserted && "duplicate variable key");
  (void)inserted;
  keys_.push_back(key);
  return it->second;
}

int VarIndex::col(VarKind kind, int owner, int region) const {
  auto it = pos_.find(VarKey{kind, owner, region});
  assert(it != pos_.end() && "unknown variable");
  return it->second;
}

bool VarIndex::is_pwa_column(int col) const {
  switch (keys_[col].kind) {
    case VarKind::kAuxPsi:
    case VarKind::kAuxFlow:
    case VarKind::kDeltaPsi:
    case VarKind::kAlpha:
    case VarKind::kBeta:
    case VarKind::kDelta:
      return true;
    default:
      return false;
  }
}

BuildResult build_model(const NetworkInstance& inst, const PwaConfig& cfg) {
  cfg.validate();
  BuildResult out;
  out.config = cfg;
  out.edges = classify_edges(inst);
  StandardModel& model = out.model;
  VarIndex& index = out.index;
  const auto& edges = out.edges;

  auto add = [&](VarKey key, std::string name, double lo, double hi, int area,
                 bool binary = false) {
    int c = index.add(key);
    int c2 = model.add_var(std::move(name), lo, hi, binary);
    assert(c == c2);
    (void)c2;
    out.column_area.push_back(area);
    return c;
  };

  for (int g = 0; g < static_cast<int>(inst.generators.size()); ++g) {
    const Generator& gen = inst.generators[g];
    int area = inst.buses[inst.bus_index(gen.bus)].area;
    int p = add({VarKind::kPower, g}, "p[" + gen.id + "]", gen.p_min, gen.p_max, area);
    // Non-gas-fueled units have their gas use pinned at zero.
    add({VarKind::kGasUse, g}, "dgu[" + gen.id + "]", 0.0, gen.gas_fueled() ? kInf : 0.0,
        area);
    if (gen.cost) {
      model.obj_quad[p] = gen.cost->c2;
      model.obj_lin[p] = gen.cost->c1;
      model.obj_const += gen.cost->c0;
    }
  }
  for (int b = 0; b < static_cast<int>(inst.buses.size()); ++b) {
    const Bus& bus = inst.buses[b];
    add({VarKind::kAngle, b}, "theta[" + bus.id + "]", bus.theta_min, bus.theta_max,
        bus.area);
  }
  for (int s = 0; s < static_cast<int>(inst.gas_sources.size()); ++s) {
    const GasSource& src = inst.gas_sources[s];
    int c = add({VarKind::kSupply, s}, "g[" + src.id + "]", src.g_min, src.g_max,
                inst.gas_nodes[inst.node_index(src.node)].area);
    model.obj_lin[c] = src.cost_c1;
    model.obj_const += src.cost_c0;
  }
  for (int t = 0; t < static_cast<int>(edges.tie_directed.size()); ++t) {
    const DirectedPipe& d = edges.tie_directed[t];
    double cap = inst.pipelines[d.pipe].flow_cap;
    add({VarKind::kTieFlow, t}, "phi_tie[" + directed_name(inst, d) + "]", -cap, cap,
        inst.gas_nodes[d.from].area);
  }
  for (int n = 0; n < static_cast<int>(inst.gas_nodes.size()); ++n) {
    const GasNode& node = inst.gas_nodes[n];
    add({VarKind::kPressure, n}, "psi[" + node.id + "]", node.psi_min, node.psi_max,
        node.area);
  }

  const int r = cfg.r;
  for (int k = 0; k < static_cast<int>(edges.internal_directed.size()); ++k) {
    const DirectedPipe& d = edges.internal_directed[k];
    const Pipeline& pipe = inst.pipelines[d.pipe];
    const GasNode& from = inst.gas_nodes[d.from];
    const std::string name = directed_name(inst, d);
    const double cap = pipe.flow_cap;
    const int area = from.area;
    out.curves.push_back(fit_pwa(*pipe.weymouth_c, cap, cfg, name));
    add({VarKind::kFlow, k}, "phi[" + name + "]", -cap, cap, area);
    add({VarKind::kAuxPsi, k}, "ypsi[" + name + "]", std::min(0.0, from.psi_min),
        std::max(0.0, from.psi_max), area);
    for (int m = 0; m < r; ++m) {
      add({VarKind::kAuxFlow, k, m}, "y[" + name + "][" + std::to_string(m + 1) + "]",
          -cap, cap, area);
    }
    add({VarKind::kDeltaPsi, k}, "dpsi[" + name + "]", 0.0, 1.0, area, true);
    for (int m = 0; m < r; ++m) {
      add({VarKind::kAlpha, k, m}, "alpha[" + name + "][" + std::to_string(m + 1) + "]",
          0.0, 1.0, area, true);
    }
    for (int m = 0; m < r; ++m) {
      add({VarKind::kBeta, k, m}, "beta[" + name + "][" + std::to_string(m + 1) + "]",
          0.0, 1.0, area, true);
    }
    for (int m = 0; m < r; ++m) {
      add({VarKind::kDelta, k, m}, "delta[" + name + "][" + std::to_string(m + 1) + "]",
          0.0, 1.0, area, true);
    }
  }

  // Power balance: sum p - sum_j (theta_i - theta_j)/X = d_e.
  std::vector<SparseRow> power(inst.buses.size());
  for (int b = 0; b < static_cast<int>(inst.buses.size()); ++b) {
    power[b].label = "power_balance[" + inst.buses[b].id + "]";
    power[b].rhs = inst.buses[b].demand_e;
  }
  for (int g = 0; g < static_cast<int>(inst.generators.size()); ++g) {
    power[inst.bus_index(inst.generators[g].bus)].add(index.col(VarKind::kPower, g), 1.0);
  }
  for (const PowerLine& line : inst.lines) {
    int i = inst.bus_index(line.from), j = inst.bus_index(line.to);
    double y = 1.0 / line.reactance;
    power[i].add(index.col(VarKind::kAngle, i), -y);
    power[i].add(index.col(VarKind::kAngle, j), y);
    power[j].add(index.col(VarKind::kAngle, j), -y);
    power[j].add(index.col(VarKind::kAngle, i), y);
  }
  for (int b = 0; b < static_cast<int>(inst.buses.size()); ++b) {
    model.eq.push_back(std::move(power[b]));
    out.eq_area.push_back(inst.buses[b].area);
  }

  // Gas balance: sum g - sum d_gu - sum_j phi_(i,j) = d_g.
  std::vector<SparseRow> gas(inst.gas_nodes.size());
  for (int n = 0; n < static_cast<int>(inst.gas_nodes.size()); ++n) {
    gas[n].label = "gas_balance[" + inst.gas_nodes[n].id + "]";
    gas[n].rhs = inst.gas_nodes[n].demand_g;
  }
  for (int s = 0; s < static_cast<int>(inst.gas_sources.size()); ++s) {
    gas[inst.node_index(inst.gas_sources[s].node)].add(index.col(VarKind::kSupply, s),
                                                       1.0);
  }
  for (int g = 0; g < static_cast<int>(inst.generators.size()); ++g) {
    const Generator& gen = inst.generators[g];
    if (gen.gas_fueled()) {
      gas[inst.node_index(*gen.gas_node)].add(index.col(VarKind::kGasUse, g), -1.0);
    }
  }
  for (int t = 0; t < static_cast<int>(edges.tie_directed.size()); ++t) {
    gas[edges.tie_directed[t].from].add(index.col(VarKind::kTieFlow, t), -1.0);
  }
  for (int k = 0; k < static_cast<int>(edges.internal_directed.size()); ++k) {
    gas[edges.internal_directed[k].from].add(index.col(VarKind::kFlow, k), -1.0);
  }
  for (int n = 0; n < static_cast<int>(inst.gas_nodes.size()); ++n) {
    model.eq.push_back(std::move(gas[n]));
    out.eq_area.push_back(inst.gas_nodes[n].area);
  }

  for (int t = 0; t < static_cast<int>(edges.tie_directed.size()); t += 2) {
    const DirectedPipe& d = edges.tie_directed[t];
    SparseRow row;
    row.label = "tie_reciprocity[" + directed_name(inst, d) + "]";
    row.add(index.col(VarKind::kTieFlow, t), 1.0);
    row.add(index.col(VarKind::kTieFlow, t + 1), 1.0);
    model.eq.push_back(std::move(row));
    out.eq_area.push_back(inst.gas_nodes[d.from].area);
  }

  // Mixed-logical blocks, two orientations per internal pipe.
  for (int k = 0; k < static_cast<int>(edges.internal_directed.size()); ++k) {
    const DirectedPipe& d = edges.internal_directed[k];
    const int partner = k ^ 1;
    const GasNode& from = inst.gas_nodes[d.from];
    const GasNode& to = inst.gas_nodes[d.to];
    MldPipeBounds bounds{from.psi_min, from.psi_max, to.psi_min, to.psi_max};
    MldBlock blk = emit_mld(directed_name(inst, d), bounds, out.curves[k], cfg);

    const MldLayout& L = blk.layout;
    std::vector<int> slot(L.size());
    slot[L.psi_from()] = index.col(VarKind::kPressure, d.from);
    slot[L.psi_to()] = index.col(VarKind::kPressure, d.to);
    slot[L.flow()] = index.col(VarKind::kFlow, k);
    slot[L.aux_psi()] = index.col(VarKind::kAuxPsi, k);
    slot[L.delta_psi()] = index.col(VarKind::kDeltaPsi, k);
    for (int m = 0; m < r; ++m) {
      slot[L.aux_flow(m)] = index.col(VarKind::kAuxFlow, k, m);
      slot[L.alpha(m)] = index.col(VarKind::kAlpha, k, m);
      slot[L.beta(m)] = index.col(VarKind::kBeta, k, m);
      slot[L.delta(m)] = index.col(VarKind::kDelta, k, m);
    }
    slot[L.partner_flow()] = index.col(VarKind::kFlow, partner);
    slot[L.partner_aux_psi()] = index.col(VarKind::kAuxPsi, partner);
    slot[L.partner_delta_psi()] = index.col(VarKind::kDeltaPsi, partner);

    auto to_global = [&](SparseRow row) {
      for (int& c : row.cols) c = slot[c];
      return row;
    };
    if (d.forward) {
      for (const SparseRow& row : blk.coupled_equalities) {
        model.eq.push_back(to_global(row));
        out.eq_area.push_back(from.area);
      }
    }
    for (const SparseRow& row : blk.equalities) {
      model.eq.push_back(to_global(row));
      out.eq_area.push_back(from.area);
    }
    for (const SparseRow& row : blk.inequalities) {
      model.ineq.push_back(to_global(row));
      out.ineq_area.push_back(from.area);
    }
  }

  // eta2 p^2 + eta1 p - d_gu <= -eta0
  for (int g = 0; g < static_cast<int>(inst.generators.size()); ++g) {
    const Generator& gen = inst.generators[g];
    if (!gen.gas_fueled()) continue;
    QuadRow q;
    q.lin.label = "gas_conversion[" + gen.id + "]";
    int p = index.col(VarKind::kPower, g);
    q.qcols.push_back(p);
    q.qvals.push_back(gen.conversion->c2);
    q.lin.add(p, gen.conversion->c1);
    q.lin.add(index.col(VarKind::kGasUse, g), -1.0);
    q.lin.rhs = -gen.conversion->c0;
    model.quad.push_back(std::move(q));
    out.quad_area.push_back(inst.buses[inst.bus_index(gen.bus)].area);
  }
  return out;
}

StandardModel relax(const StandardModel& model) {
  StandardModel out = model;
  std::fill(out.integral.begin(), out.integral.end(), false);
  return out;
}

std::vector<AreaView> area_views(const BuildResult& build, const NetworkInstance& inst) {
  const StandardModel& model = build.model;
  std::vector<AreaView> views(inst.num_areas);
  for (int a = 0; a < inst.num_areas; ++a) views[a].area = a + 1;
  for (int c = 0; c < model.num_vars; ++c) {
    views[build.column_area[c] - 1].columns.push_back(c);
  }
  for (int k = 0; k < static_cast<int>(model.eq.size()); ++k) {
    AreaView& v = views[build.eq_area[k] - 1];
    std::set<int> foreign;
    for (int c : model.eq[k].cols) {
      if (build.column_area[c] != v.area) foreign.insert(c);
    }
    if (foreign.empty()) {
      v.eq_rows.push_back(k);
    } else {
      v.coupling_rows.push_back(k);
      for (int c : foreign) {
        if (std::find(v.neighbor_columns.begin(), v.neighbor_columns.end(), c) ==
            v.neighbor_columns.end()) {
          v.neighbor_columns.push_back(c);
        }
      }
    }
  }
  for (int k = 0; k < static_cast<int>(model.ineq.size()); ++k) {
    views[build.ineq_area[k] - 1].ineq_rows.push_back(k);
  }
  for (int k = 0; k < static_cast<int>(model.quad.size()); ++k) {
    views[build.quad_area[k] - 1].quad_rows.push_back(k);
  }
  for (AreaView& v : views) std::sort(v.neighbor_columns.begin(), v.neighbor_columns.end());
  return views;
}

}  // namespace ogpf
