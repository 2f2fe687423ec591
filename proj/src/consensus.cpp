// Consensus ADMM over the area partition.
//
// Every column that appears in some area's coupling rows is "shared": the
// owner and each referencing area hold a private copy x_a,c. The iteration
//
//   x_a   = argmin f_a(x_a) + sum_c lambda_a,c x_a,c + rho/2 (x_a,c - z_c)^2
//   z_c   = mean_a (x_a,c + lambda_a,c / rho)
//   lambda_a,c += rho (x_a,c - z_c)
//
// drives the copies to agree. Each area subproblem is an ordinary convex
// model solved by the backend.

#include <algorithm>
#include <cmath>
#include <map>

#include "ogpf/convexsolve.hpp"
#include "ogpf/errors.hpp"

namespace ogpf {
namespace {

struct LocalProblem {
  StandardModel model;
  std::vector<int> global_of;           // local column -> global column
  std::vector<int> shared_local;        // local columns that are shared
  std::vector<int> shared_slot;         // matching index into the z vector
  std::vector<double> base_quad, base_lin;
};

SparseRow remap(const SparseRow& row, const std::map<int, int>& local_of) {
  SparseRow out;
  out.rhs = row.rhs;
  out.label = row.label;
  for (std::size_t k = 0; k < row.cols.size(); ++k) {
    out.add(local_of.at(row.cols[k]), row.vals[k]);
  }
  return out;
}

}  // namespace

Solution solve_consensus(const StandardModel& model, const std::vector<AreaView>& views,
                         const ConsensusOptions& opts, const ConvexSolver* backend) {
  if (opts.rho <= 0.0) throw ConfigError("consensus rho must be positive");
  if (!(opts.over_relaxation > 0.0 && opts.over_relaxation < 2.0)) {
    throw ConfigError("over-relaxation weight must lie in (0, 2)");
  }
  if (model.num_integral() > 0) {
    throw ConfigError("solve_consensus needs a model without integral columns");
  }
  InteriorPointSolver default_backend;
  const ConvexSolver& solver = backend ? *backend : default_backend;

  // Shared columns and their holders.
  std::vector<int> owner(model.num_vars, -1);
  for (std::size_t a = 0; a < views.size(); ++a) {
    for (int c : views[a].columns) owner[c] = static_cast<int>(a);
  }
  for (int c = 0; c < model.num_vars; ++c) {
    if (owner[c] < 0) throw ConfigError("area views do not cover column " + model.var_names[c]);
  }
  std::map<int, int> slot_of;  // global column -> z slot
  for (const AreaView& v : views) {
    for (int c : v.neighbor_columns) slot_of.emplace(c, 0);
  }
  std::vector<int> shared_cols;
  for (auto& [c, s] : slot_of) {
    s = static_cast<int>(shared_cols.size());
    shared_cols.push_back(c);
  }

  std::vector<LocalProblem> locals(views.size());
  for (std::size_t a = 0; a < views.size(); ++a) {
    const AreaView& v = views[a];
    LocalProblem& lp = locals[a];
    std::map<int, int> local_of;
    auto add_col = [&](int c) {
      int j = lp.model.add_var(model.var_names[c], model.lower[c], model.upper[c]);
      local_of[c] = j;
      lp.global_of.push_back(c);
      lp.base_quad.push_back(owner[c] == static_cast<int>(a) ? model.obj_quad[c] : 0.0);
      lp.base_lin.push_back(owner[c] == static_cast<int>(a) ? model.obj_lin[c] : 0.0);
      if (slot_of.count(c)) {
        lp.shared_local.push_back(j);
        lp.shared_slot.push_back(slot_of[c]);
      }
    };
    for (int c : v.columns) add_col(c);
    for (int c : v.neighbor_columns) add_col(c);
    lp.model.obj_const = 0.0;
    for (int k : v.eq_rows) lp.model.eq.push_back(remap(model.eq[k], local_of));
    for (int k : v.coupling_rows) lp.model.eq.push_back(remap(model.eq[k], local_of));
    for (int k : v.ineq_rows) lp.model.ineq.push_back(remap(model.ineq[k], local_of));
    for (int k : v.quad_rows) {
      QuadRow q;
      q.lin = remap(model.quad[k].lin, local_of);
      for (std::size_t i = 0; i < model.quad[k].qcols.size(); ++i) {
        q.qcols.push_back(local_of.at(model.quad[k].qcols[i]));
        q.qvals.push_back(model.quad[k].qvals[i]);
      }
      lp.model.quad.push_back(std::move(q));
    }
  }

  // Holder count per shared slot.
  std::vector<int> holders(shared_cols.size(), 0);
  for (const LocalProblem& lp : locals) {
    for (int s : lp.shared_slot) ++holders[s];
  }

  std::vector<double> z(shared_cols.size());
  for (std::size_t s = 0; s < shared_cols.size(); ++s) {
    const int c = shared_cols[s];
    const double lo = model.lower[c], hi = model.upper[c];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      z[s] = 0.5 * (lo + hi);
    } else if (std::isfinite(lo)) {
      z[s] = lo;
    } else if (std::isfinite(hi)) {
      z[s] = hi;
    } else {
      z[s] = 0.0;
    }
  }
  std::vector<std::vector<double>> lambda(views.size());
  for (std::size_t a = 0; a < views.size(); ++a) lambda[a].assign(locals[a].shared_local.size(), 0.0);

  Solution out;
  out.x.assign(model.num_vars, 0.0);
  double rho = opts.rho;
  const double alpha = opts.over_relaxation;
  bool converged = false;
  bool failed = false;
  SolveStatus fail_status = SolveStatus::kMaxIter;
  std::vector<std::vector<double>> xs(views.size());

  for (int it = 1; it <= opts.max_outer; ++it) {
    out.outer_iterations = it;
    // Area solves. Each one reads only z, lambda and its own data.
    int inner = 0;
    for (std::size_t a = 0; a < views.size(); ++a) {
      LocalProblem& lp = locals[a];
      lp.model.obj_quad = lp.base_quad;
      lp.model.obj_lin = lp.base_lin;
      for (std::size_t k = 0; k < lp.shared_local.size(); ++k) {
        const int j = lp.shared_local[k];
        const double zc = z[lp.shared_slot[k]];
        lp.model.obj_quad[j] += 0.5 * rho;
        lp.model.obj_lin[j] += lambda[a][k] - rho * zc;
      }
      Solution s = solver.solve(lp.model, opts.inner);
      inner += s.iterations;
      if (s.status != SolveStatus::kOptimal) {
        failed = true;
        fail_status = s.status;
      }
      xs[a] = std::move(s.x);
    }
    out.iterations += inner;
    if (failed) break;

    // Consensus update.
    std::vector<double> z_new(z.size(), 0.0);
    for (std::size_t a = 0; a < views.size(); ++a) {
      const LocalProblem& lp = locals[a];
      for (std::size_t k = 0; k < lp.shared_local.size(); ++k) {
        const double zc = z[lp.shared_slot[k]];
        const double xh = alpha * xs[a][lp.shared_local[k]] + (1.0 - alpha) * zc;
        z_new[lp.shared_slot[k]] += xh + lambda[a][k] / rho;
      }
    }
    for (std::size_t s = 0; s < z.size(); ++s) z_new[s] /= holders[s];

    double primal = 0.0, dual = 0.0;
    for (std::size_t a = 0; a < views.size(); ++a) {
      const LocalProblem& lp = locals[a];
      for (std::size_t k = 0; k < lp.shared_local.size(); ++k) {
        const double x = xs[a][lp.shared_local[k]];
        const double xh = alpha * x + (1.0 - alpha) * z[lp.shared_slot[k]];
        lambda[a][k] += rho * (xh - z_new[lp.shared_slot[k]]);
        primal = std::max(primal, std::abs(x - z_new[lp.shared_slot[k]]));
      }
    }
    for (std::size_t s = 0; s < z.size(); ++s) dual = std::max(dual, rho * std::abs(z_new[s] - z[s]));
    z = std::move(z_new);
    out.primal_residual_history.push_back(primal);
    out.dual_residual_history.push_back(dual);

    if (primal <= opts.primal_tol && dual <= opts.dual_tol) {
      converged = true;
      break;
    }
    if (opts.balance_factor > 1.0) {
      double scale = 1.0;
      if (primal > opts.balance_factor * dual) {
        scale = 2.0;
      } else if (dual > opts.balance_factor * primal) {
        scale = 0.5;
      }
      // lambda is kept unscaled, so a new rho needs no dual rescaling.
      rho *= scale;
    }
  }

  for (std::size_t a = 0; a < views.size(); ++a) {
    if (xs[a].empty()) continue;
    const LocalProblem& lp = locals[a];
    for (std::size_t j = 0; j < lp.global_of.size(); ++j) {
      const int c = lp.global_of[j];
      if (owner[c] == static_cast<int>(a)) out.x[c] = xs[a][j];
    }
  }
  out.final_rho = rho;
  out.objective = model.objective(out.x);
  Violation v = evaluate_violation(model, out.x, false);
  out.residuals.eq = v.eq;
  out.residuals.ineq = std::max(v.ineq, v.bounds);
  out.residuals.gap = out.dual_residual_history.empty() ? 0.0 : out.dual_residual_history.back();
  out.eq_duals.assign(model.eq.size(), 0.0);
  out.ineq_duals.assign(model.ineq.size(), 0.0);
  out.quad_duals.assign(model.quad.size(), 0.0);
  out.lower_duals.assign(model.num_vars, 0.0);
  out.upper_duals.assign(model.num_vars, 0.0);
  if (converged) {
    out.status = SolveStatus::kOptimal;
  } else {
    out.status = failed ? fail_status : SolveStatus::kMaxIter;
  }
  return out;
}

}  // namespace ogpf
