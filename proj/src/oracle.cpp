#include "ogpf/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ogpf/errors.hpp"

namespace ogpf {
namespace {

bool only_plain_columns(const SparseRow& row, const VarIndex& ix) {
  return std::none_of(row.cols.begin(), row.cols.end(),
                      [&](int c) { return ix.is_pwa_column(c); });
}

// Writes binaries and auxiliaries of one orientation for region k.
void fill_orientation(const BuildResult& build, int dir, int k, int delta_psi,
                      std::vector<double>& x) {
  const VarIndex& ix = build.index;
  const int r = build.config.r;
  const DirectedPipe& d = build.edges.internal_directed[dir];
  const double phi = x[ix.col(VarKind::kFlow, dir)];
  x[ix.col(VarKind::kDeltaPsi, dir)] = delta_psi;
  x[ix.col(VarKind::kAuxPsi, dir)] = delta_psi * x[ix.col(VarKind::kPressure, d.from)];
  for (int m = 0; m < r; ++m) {
    x[ix.col(VarKind::kAlpha, dir, m)] = m >= k ? 1.0 : 0.0;
    x[ix.col(VarKind::kBeta, dir, m)] = m <= k ? 1.0 : 0.0;
    x[ix.col(VarKind::kDelta, dir, m)] = m == k ? 1.0 : 0.0;
    x[ix.col(VarKind::kAuxFlow, dir, m)] = m == k ? phi : 0.0;
  }
}

}  // namespace

std::int64_t configuration_count(int num_pipes, int r) {
  std::int64_t n = 1;
  for (int i = 0; i < num_pipes; ++i) {
    if (n > std::numeric_limits<std::int64_t>::max() / r) {
      return std::numeric_limits<std::int64_t>::max();
    }
    n *= r;
  }
  return n;
}

OracleResult enumerate_solve(const BuildResult& build, const OracleOptions& opts,
                             const std::vector<int>& order) {
  const StandardModel& model = build.model;
  const VarIndex& ix = build.index;
  const int r = build.config.r;
  const double eps = build.config.epsilon;
  const int pipes = static_cast<int>(build.edges.internal_directed.size()) / 2;

  const std::int64_t total = configuration_count(pipes, r);
  if (total > opts.cap) {
    throw CapExceeded("oracle needs " + std::to_string(total) +
                          " configurations, cap is " + std::to_string(opts.cap),
                      static_cast<double>(total));
  }
  std::vector<int> perm = order;
  if (perm.empty()) {
    perm.resize(pipes);
    std::iota(perm.begin(), perm.end(), 0);
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i) sorted.clear();
  }
  if (static_cast<int>(sorted.size()) != pipes) {
    throw ConfigError("oracle pipe order must be a permutation of the internal pipes");
  }

  // Continuous part of the model: every column outside the logic blocks.
  StandardModel base;
  std::vector<int> sub_of(model.num_vars, -1);
  std::vector<int> full_of;
  for (int c = 0; c < model.num_vars; ++c) {
    if (ix.is_pwa_column(c)) continue;
    sub_of[c] = base.add_var(model.var_names[c], model.lower[c], model.upper[c]);
    base.obj_quad[sub_of[c]] = model.obj_quad[c];
    base.obj_lin[sub_of[c]] = model.obj_lin[c];
    full_of.push_back(c);
  }
  base.obj_const = model.obj_const;
  auto remap = [&](SparseRow row) {
    for (int& c : row.cols) c = sub_of[c];
    return row;
  };
  for (const SparseRow& row : model.eq) {
    if (only_plain_columns(row, ix)) base.eq.push_back(remap(row));
  }
  for (const SparseRow& row : model.ineq) {
    if (only_plain_columns(row, ix)) base.ineq.push_back(remap(row));
  }
  for (const QuadRow& row : model.quad) {
    QuadRow q = row;
    q.lin = remap(row.lin);
    for (int& c : q.qcols) c = sub_of[c];
    base.quad.push_back(std::move(q));
  }

  OracleResult res;
  res.num_configurations = total;
  res.best_objective = std::numeric_limits<double>::infinity();
  std::vector<double> best_sub;
  std::vector<int> regions(pipes, 0);  // indexed by pipe position
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    for (int i = pipes - 1; i >= 0; --i) {
      regions[perm[i]] = static_cast<int>(rest % r);
      rest /= r;
    }
    StandardModel sub = base;
    for (int p = 0; p < pipes; ++p) {
      const int dir = 2 * p;
      const DirectedPipe& d = build.edges.internal_directed[dir];
      const PwaSegment& seg = build.curves[dir].segments[regions[p]];
      const int k = regions[p];
      const int phi = sub_of[ix.col(VarKind::kFlow, dir)];
      const int pi = sub_of[ix.col(VarKind::kPressure, d.from)];
      const int pj = sub_of[ix.col(VarKind::kPressure, d.to)];
      const double s = seg.lo >= 0.0 ? 1.0 : -1.0;
      const double lo = seg.lo + (k > 0 ? eps : 0.0);
      const double hi = seg.hi - (k < r - 1 ? eps : 0.0);
      sub.lower[phi] = std::max(sub.lower[phi], lo);
      sub.upper[phi] = std::min(sub.upper[phi], hi);
      const std::string tag = build.curves[dir].pipe;
      SparseRow flow;
      flow.label = "active_segment[" + tag + "]";
      flow.add(phi, seg.a);
      flow.add(pi, -s);
      flow.add(pj, s);
      flow.rhs = -seg.b;
      sub.eq.push_back(std::move(flow));
      SparseRow drop;
      drop.label = "pressure_drop_sign[" + tag + "]";
      drop.add(pi, -s);
      drop.add(pj, s);
      drop.rhs = -eps;
      sub.ineq.push_back(std::move(drop));
    }
    Solution sol = solve_convex(sub, opts.solve);
    OracleEntry entry{regions, sol.status, sol.objective};
    res.log.push_back(entry);
    if (sol.status == SolveStatus::kOptimal && sol.objective < res.best_objective) {
      res.best_objective = sol.objective;
      res.best_configuration = regions;
      best_sub = sol.x;
    }
  }
  if (best_sub.empty()) {
    throw AllInfeasible("no region configuration admits a feasible point (" +
                        std::to_string(total) + " tried)");
  }

  res.best_x.assign(model.num_vars, 0.0);
  for (std::size_t j = 0; j < full_of.size(); ++j) res.best_x[full_of[j]] = best_sub[j];
  for (int p = 0; p < pipes; ++p) {
    const int k = res.best_configuration[p];
    const int fwd_sign = build.curves[2 * p].segments[k].lo >= 0.0 ? 1 : 0;
    fill_orientation(build, 2 * p, k, fwd_sign, res.best_x);
    fill_orientation(build, 2 * p + 1, r - 1 - k, 1 - fwd_sign, res.best_x);
  }
  return res;
}

}  // namespace ogpf
