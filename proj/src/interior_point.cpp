// Mehrotra predictor-corrector interior point method for
//
//   min  sum q_j x_j^2 + c'x   s.t.  Ax = b,  c_i(x) <= 0
//
// where every c_i is either affine (rows, bounds) or a separable convex
// quadratic. Inequalities carry slacks s > 0 so the iteration may start
// infeasible. Fixed columns are substituted out before the first iteration.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "ogpf/convexsolve.hpp"
#include "ogpf/errors.hpp"

namespace ogpf {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

constexpr double kStepFraction = 0.995;
constexpr double kRegularization = 1e-10;
constexpr double kDiverged = 1e14;

struct QuadTerm {
  std::vector<int> qc;
  std::vector<double> qv;
  std::vector<int> lc;
  std::vector<double> lv;
  double rhs = 0.0;
};

// The model with fixed columns removed.
struct Reduced {
  bool infeasible = false;
  std::string reason;
  int n = 0;
  std::vector<int> full_of;    // reduced column -> model column
  std::vector<double> fixed;   // model column values (fixed ones only meaningful)
  std::vector<bool> is_fixed;
  Vec q, c;
  double fconst = 0.0;
  SpMat A, G;
  Vec b, h;
  std::vector<int> eq_rows, ineq_rows, quad_rows;  // kept model row indices
  std::vector<QuadTerm> quad;
  std::vector<int> lo_idx, up_idx;
  Vec lo_val, up_val;

  int mG() const { return static_cast<int>(G.rows()); }
  int mQ() const { return static_cast<int>(quad.size()); }
  int mL() const { return static_cast<int>(lo_idx.size()); }
  int mU() const { return static_cast<int>(up_idx.size()); }
  int m() const { return mG() + mQ() + mL() + mU(); }
};

Reduced reduce(const StandardModel& model, double feas_tol) {
  Reduced red;
  const int N = model.num_vars;
  red.fixed.assign(N, 0.0);
  red.is_fixed.assign(N, false);
  std::vector<int> red_of(N, -1);
  for (int j = 0; j < N; ++j) {
    const double lo = model.lower[j], hi = model.upper[j];
    if (lo > hi + feas_tol) {
      red.infeasible = true;
      red.reason = "empty box on " + model.var_names[j];
      return red;
    }
    if (std::isfinite(lo) && std::isfinite(hi) &&
        hi - lo <= 1e-12 * (1.0 + std::abs(lo))) {
      red.is_fixed[j] = true;
      red.fixed[j] = 0.5 * (lo + hi);
    } else {
      red_of[j] = red.n++;
      red.full_of.push_back(j);
    }
  }
  const int n = red.n;
  red.q = Vec::Zero(n);
  red.c = Vec::Zero(n);
  red.fconst = model.obj_const;
  for (int j = 0; j < N; ++j) {
    if (red.is_fixed[j]) {
      const double v = red.fixed[j];
      red.fconst += model.obj_quad[j] * v * v + model.obj_lin[j] * v;
    } else {
      red.q[red_of[j]] = model.obj_quad[j];
      red.c[red_of[j]] = model.obj_lin[j];
    }
  }

  auto split = [&](const SparseRow& row, std::vector<Triplet>& trip, int r,
                   double& rhs) {
    rhs = row.rhs;
    bool any = false;
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      int j = row.cols[k];
      if (red.is_fixed[j]) {
        rhs -= row.vals[k] * red.fixed[j];
      } else if (row.vals[k] != 0.0) {
        trip.emplace_back(r, red_of[j], row.vals[k]);
        any = true;
      }
    }
    return any;
  };

  std::vector<Triplet> trip;
  std::vector<double> rhs;
  for (int k = 0; k < static_cast<int>(model.eq.size()); ++k) {
    double v;
    std::size_t mark = trip.size();
    if (split(model.eq[k], trip, static_cast<int>(rhs.size()), v)) {
      red.eq_rows.push_back(k);
      rhs.push_back(v);
    } else {
      trip.resize(mark);
      if (std::abs(v) > feas_tol) {
        red.infeasible = true;
        red.reason = "constant equality violated: " + model.eq[k].label;
        return red;
      }
    }
  }
  red.A.resize(static_cast<int>(rhs.size()), n);
  red.A.setFromTriplets(trip.begin(), trip.end());
  red.b = Eigen::Map<Vec>(rhs.data(), static_cast<int>(rhs.size()));

  trip.clear();
  rhs.clear();
  for (int k = 0; k < static_cast<int>(model.ineq.size()); ++k) {
    double v;
    std::size_t mark = trip.size();
    if (split(model.ineq[k], trip, static_cast<int>(rhs.size()), v)) {
      red.ineq_rows.push_back(k);
      rhs.push_back(v);
    } else {
      trip.resize(mark);
      if (v < -feas_tol) {
        red.infeasible = true;
        red.reason = "constant inequality violated: " + model.ineq[k].label;
        return red;
      }
    }
  }
  red.G.resize(static_cast<int>(rhs.size()), n);
  red.G.setFromTriplets(trip.begin(), trip.end());
  red.h = Eigen::Map<Vec>(rhs.data(), static_cast<int>(rhs.size()));

  for (int k = 0; k < static_cast<int>(model.quad.size()); ++k) {
    const QuadRow& row = model.quad[k];
    QuadTerm t;
    t.rhs = row.lin.rhs;
    for (std::size_t i = 0; i < row.qcols.size(); ++i) {
      int j = row.qcols[i];
      if (red.is_fixed[j]) {
        t.rhs -= row.qvals[i] * red.fixed[j] * red.fixed[j];
      } else {
        t.qc.push_back(red_of[j]);
        t.qv.push_back(row.qvals[i]);
      }
    }
    for (std::size_t i = 0; i < row.lin.cols.size(); ++i) {
      int j = row.lin.cols[i];
      if (red.is_fixed[j]) {
        t.rhs -= row.lin.vals[i] * red.fixed[j];
      } else {
        t.lc.push_back(red_of[j]);
        t.lv.push_back(row.lin.vals[i]);
      }
    }
    if (t.qc.empty() && t.lc.empty()) {
      if (t.rhs < -feas_tol) {
        red.infeasible = true;
        red.reason = "constant quadratic row violated: " + row.lin.label;
        return red;
      }
      continue;
    }
    red.quad_rows.push_back(k);
    red.quad.push_back(std::move(t));
  }

  std::vector<double> lv, uv;
  for (int i = 0; i < n; ++i) {
    int j = red.full_of[i];
    if (std::isfinite(model.lower[j])) {
      red.lo_idx.push_back(i);
      lv.push_back(model.lower[j]);
    }
    if (std::isfinite(model.upper[j])) {
      red.up_idx.push_back(i);
      uv.push_back(model.upper[j]);
    }
  }
  red.lo_val = Eigen::Map<Vec>(lv.data(), static_cast<int>(lv.size()));
  red.up_val = Eigen::Map<Vec>(uv.data(), static_cast<int>(uv.size()));
  return red;
}

class Engine {
 public:
  Engine(const Reduced& p, const SolveOptions& opts) : p_(p), opts_(opts) {}

  struct Result {
    Vec x, y, z;
    int iterations = 0;
    bool converged = false;
    double rp = 0, ri = 0, rd = 0, gap = 0;
  };

  Result run() {
    const int n = p_.n, m = p_.m(), me = static_cast<int>(p_.A.rows());
    Vec x(n);
    initial_point(x);
    Vec cx = constraints(x);
    Vec s = (-cx).cwiseMax(1.0);
    Vec z = Vec::Ones(m);
    Vec y = Vec::Zero(me);

    Result res;
    int stalls = 0;
    for (int it = 0; it <= opts_.max_iter; ++it) {
      cx = constraints(x);
      Vec grad = gradient(x);
      Vec rd = grad + p_.A.transpose() * y + jac_t(x, z);
      Vec rp = p_.A * x - p_.b;
      Vec ri = cx + s;
      const double gap = m > 0 ? s.dot(z) : 0.0;
      res.x = x;
      res.y = y;
      res.z = z;
      res.iterations = it;
      res.rp = inf_norm(rp);
      res.ri = inf_norm(ri);
      res.rd = inf_norm(rd);
      res.gap = gap;
      const double fval = objective(x);
      // Stationarity is measured relative to the objective gradient scale.
      const double dual_scale = 1.0 + inf_norm(grad);
      if (res.rp <= opts_.feas_tol && res.ri <= opts_.feas_tol &&
          res.rd <= opts_.opt_tol * dual_scale &&
          gap <= opts_.opt_tol * std::max(1.0, std::abs(fval))) {
        res.converged = true;
        return res;
      }
      if (it == opts_.max_iter) break;
      if (m > 0 && (z.maxCoeff() > kDiverged || inf_norm(x) > kDiverged)) break;

      const double mu = m > 0 ? gap / m : 0.0;
      Vec d = m > 0 ? Vec(z.cwiseQuotient(s)) : Vec();
      if (!factorize(x, z, d)) break;

      // Predictor.
      Vec rc = s.cwiseProduct(z);
      Vec dx, dy, ds, dz;
      direction(x, s, z, rd, rp, ri, rc, dx, dy, ds, dz);
      double ap = max_step(s, ds), ad = max_step(z, dz);
      if (m > 0) {
        const double mu_aff = (s + ap * ds).dot(z + ad * dz) / m;
        const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);
        // Corrector.
        rc = s.cwiseProduct(z) + ds.cwiseProduct(dz) - Vec::Constant(m, sigma * mu);
        direction(x, s, z, rd, rp, ri, rc, dx, dy, ds, dz);
        ap = std::min(1.0, kStepFraction * max_step(s, ds));
        ad = std::min(1.0, kStepFraction * max_step(z, dz));
        if (std::min(ap, ad) < 0.1) {
          // The second-order term can point into a face; retry with a
          // plainly centred direction and keep whichever moves further.
          Vec cx, cy, cs, cz;
          rc = s.cwiseProduct(z) - Vec::Constant(m, std::max(sigma, 0.5) * mu);
          direction(x, s, z, rd, rp, ri, rc, cx, cy, cs, cz);
          const double cp = std::min(1.0, kStepFraction * max_step(s, cs));
          const double cd = std::min(1.0, kStepFraction * max_step(z, cz));
          if (std::min(cp, cd) > std::min(ap, ad)) {
            dx = cx, dy = cy, ds = cs, dz = cz;
            ap = cp, ad = cd;
          }
        }
      }
      x += ap * dx;
      s += ap * ds;
      y += ad * dy;
      z += ad * dz;
      if (ap < 1e-12 && ad < 1e-12) {
        if (++stalls >= 3) break;
      } else {
        stalls = 0;
      }
    }
    return res;
  }

  double objective(const Vec& x) const {
    return p_.fconst + x.dot(p_.q.cwiseProduct(x)) + p_.c.dot(x);
  }

  Vec gradient(const Vec& x) const { return 2.0 * p_.q.cwiseProduct(x) + p_.c; }

  Vec constraints(const Vec& x) const {
    Vec cx(p_.m());
    int o = 0;
    if (p_.mG() > 0) cx.segment(0, p_.mG()) = p_.G * x - p_.h;
    o = p_.mG();
    for (const QuadTerm& t : p_.quad) {
      double v = -t.rhs;
      for (std::size_t k = 0; k < t.qc.size(); ++k) v += t.qv[k] * x[t.qc[k]] * x[t.qc[k]];
      for (std::size_t k = 0; k < t.lc.size(); ++k) v += t.lv[k] * x[t.lc[k]];
      cx[o++] = v;
    }
    for (int k = 0; k < p_.mL(); ++k) cx[o++] = p_.lo_val[k] - x[p_.lo_idx[k]];
    for (int k = 0; k < p_.mU(); ++k) cx[o++] = x[p_.up_idx[k]] - p_.up_val[k];
    return cx;
  }

 private:
  static double inf_norm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

  void initial_point(Vec& x) const {
    x.setZero();
    Vec lo = Vec::Constant(p_.n, -kInf), hi = Vec::Constant(p_.n, kInf);
    for (int k = 0; k < p_.mL(); ++k) lo[p_.lo_idx[k]] = p_.lo_val[k];
    for (int k = 0; k < p_.mU(); ++k) hi[p_.up_idx[k]] = p_.up_val[k];
    for (int i = 0; i < p_.n; ++i) {
      const bool fl = std::isfinite(lo[i]), fh = std::isfinite(hi[i]);
      if (fl && fh) {
        x[i] = 0.5 * (lo[i] + hi[i]);
      } else if (fl) {
        x[i] = lo[i] + 1.0;
      } else if (fh) {
        x[i] = hi[i] - 1.0;
      }
    }
  }

  // Gradient of quad row k at x, as (col, value) pairs with merged columns.
  void quad_grad(const QuadTerm& t, const Vec& x, std::vector<std::pair<int, double>>& g) const {
    g.clear();
    for (std::size_t k = 0; k < t.lc.size(); ++k) g.emplace_back(t.lc[k], t.lv[k]);
    for (std::size_t k = 0; k < t.qc.size(); ++k) {
      g.emplace_back(t.qc[k], 2.0 * t.qv[k] * x[t.qc[k]]);
    }
    std::sort(g.begin(), g.end());
    std::size_t w = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (w > 0 && g[w - 1].first == g[k].first) {
        g[w - 1].second += g[k].second;
      } else {
        g[w++] = g[k];
      }
    }
    g.resize(w);
  }

  // J(x)' v for the stacked constraints.
  Vec jac_t(const Vec& x, const Vec& v) const {
    Vec out = Vec::Zero(p_.n);
    if (p_.mG() > 0) out += p_.G.transpose() * v.segment(0, p_.mG());
    int o = p_.mG();
    std::vector<std::pair<int, double>> g;
    for (const QuadTerm& t : p_.quad) {
      quad_grad(t, x, g);
      for (auto [c, val] : g) out[c] += val * v[o];
      ++o;
    }
    for (int k = 0; k < p_.mL(); ++k) out[p_.lo_idx[k]] -= v[o++];
    for (int k = 0; k < p_.mU(); ++k) out[p_.up_idx[k]] += v[o++];
    return out;
  }

  Vec jac(const Vec& x, const Vec& dx) const {
    Vec out(p_.m());
    if (p_.mG() > 0) out.segment(0, p_.mG()) = p_.G * dx;
    int o = p_.mG();
    std::vector<std::pair<int, double>> g;
    for (const QuadTerm& t : p_.quad) {
      quad_grad(t, x, g);
      double v = 0.0;
      for (auto [c, val] : g) v += val * dx[c];
      out[o++] = v;
    }
    for (int k = 0; k < p_.mL(); ++k) out[o++] = -dx[p_.lo_idx[k]];
    for (int k = 0; k < p_.mU(); ++k) out[o++] = dx[p_.up_idx[k]];
    return out;
  }

  bool factorize(const Vec& x, const Vec& z, const Vec& d) {
    const int n = p_.n, me = static_cast<int>(p_.A.rows());
    std::vector<Triplet> trip;
    Vec diag = 2.0 * p_.q;
    int o = p_.mG();
    std::vector<std::pair<int, double>> g;
    for (std::size_t k = 0; k < p_.quad.size(); ++k) {
      const QuadTerm& t = p_.quad[k];
      for (std::size_t i = 0; i < t.qc.size(); ++i) diag[t.qc[i]] += 2.0 * t.qv[i] * z[o];
      quad_grad(t, x, g);
      for (auto [ci, vi] : g) {
        for (auto [cj, vj] : g) {
          if (ci >= cj) trip.emplace_back(ci, cj, d[o] * vi * vj);
        }
      }
      ++o;
    }
    for (int k = 0; k < p_.mL(); ++k) diag[p_.lo_idx[k]] += d[o++];
    for (int k = 0; k < p_.mU(); ++k) diag[p_.up_idx[k]] += d[o++];
    if (p_.mG() > 0) {
      SpMat gtg = SpMat(p_.G.transpose()) * d.segment(0, p_.mG()).asDiagonal() * p_.G;
      for (int col = 0; col < gtg.outerSize(); ++col) {
        for (SpMat::InnerIterator it(gtg, col); it; ++it) {
          if (it.row() >= it.col()) trip.emplace_back(it.row(), it.col(), it.value());
        }
      }
    }
    for (int i = 0; i < n; ++i) trip.emplace_back(i, i, diag[i]);
    for (int col = 0; col < p_.A.outerSize(); ++col) {
      for (SpMat::InnerIterator it(p_.A, col); it; ++it) {
        trip.emplace_back(n + it.row(), it.col(), it.value());
      }
    }
    // Explicit zeros keep the diagonal in the sparsity pattern.
    for (int i = 0; i < me; ++i) trip.emplace_back(n + i, n + i, 0.0);
    kkt0_.resize(n + me, n + me);
    kkt0_.setFromTriplets(trip.begin(), trip.end());
    double reg = kRegularization;
    for (int attempt = 0; attempt < 8; ++attempt, reg *= 100.0) {
      kkt_ = kkt0_;
      for (int i = 0; i < n + me; ++i) kkt_.coeffRef(i, i) += i < n ? reg : -reg;
      ldlt_.compute(kkt_);
      if (ldlt_.info() == Eigen::Success) return true;
    }
    return false;
  }

  void direction(const Vec& x, const Vec& s, const Vec& z, const Vec& rd, const Vec& rp,
                 const Vec& ri, const Vec& rc, Vec& dx, Vec& dy, Vec& ds, Vec& dz) const {
    const int n = p_.n, me = static_cast<int>(p_.A.rows());
    Vec rhs(n + me);
    if (p_.m() > 0) {
      Vec w = (rc - z.cwiseProduct(ri)).cwiseQuotient(s);
      rhs.head(n) = -rd + jac_t(x, w);
    } else {
      rhs.head(n) = -rd;
    }
    rhs.tail(me) = -rp;
    Vec sol = ldlt_.solve(rhs);
    // Refinement against the unregularized matrix removes both the
    // regularization bias and the factorization round-off.
    for (int k = 0; k < 3; ++k) {
      Vec res = rhs - kkt0_.selfadjointView<Eigen::Lower>() * sol;
      sol += ldlt_.solve(res);
    }
    dx = sol.head(n);
    dy = sol.tail(me);
    if (p_.m() > 0) {
      ds = -ri - jac(x, dx);
      dz = (-rc - z.cwiseProduct(ds)).cwiseQuotient(s);
    } else {
      ds.resize(0);
      dz.resize(0);
    }
  }

  static double max_step(const Vec& v, const Vec& dv) {
    double a = 1.0 / kStepFraction;
    for (int i = 0; i < v.size(); ++i) {
      if (dv[i] < 0) a = std::min(a, -v[i] / dv[i]);
    }
    return a;
  }

  const Reduced& p_;
  SolveOptions opts_;
  SpMat kkt0_, kkt_;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
};

// Elastic feasibility problem: minimize the total violation of every row.
StandardModel elastic(const StandardModel& model) {
  StandardModel e = model;
  std::fill(e.obj_quad.begin(), e.obj_quad.end(), 0.0);
  std::fill(e.obj_lin.begin(), e.obj_lin.end(), 0.0);
  e.obj_const = 0.0;
  for (SparseRow& row : e.eq) {
    int up = e.add_var("e+[" + row.label + "]", 0.0, kInf);
    int dn = e.add_var("e-[" + row.label + "]", 0.0, kInf);
    e.obj_lin[up] = e.obj_lin[dn] = 1.0;
    row.add(up, -1.0);
    row.add(dn, 1.0);
  }
  for (SparseRow& row : e.ineq) {
    int t = e.add_var("t[" + row.label + "]", 0.0, kInf);
    e.obj_lin[t] = 1.0;
    row.add(t, -1.0);
  }
  for (QuadRow& row : e.quad) {
    int t = e.add_var("t[" + row.lin.label + "]", 0.0, kInf);
    e.obj_lin[t] = 1.0;
    row.lin.add(t, -1.0);
  }
  return e;
}

Solution run_ipm(const StandardModel& model, const SolveOptions& opts, bool allow_phase1) {
  Solution sol;
  const int N = model.num_vars;
  sol.eq_duals.assign(model.eq.size(), 0.0);
  sol.ineq_duals.assign(model.ineq.size(), 0.0);
  sol.quad_duals.assign(model.quad.size(), 0.0);
  sol.lower_duals.assign(N, 0.0);
  sol.upper_duals.assign(N, 0.0);

  Reduced red = reduce(model, opts.feas_tol);
  if (red.infeasible) {
    sol.status = SolveStatus::kInfeasible;
    sol.x.assign(N, 0.0);
    for (int j = 0; j < N; ++j) {
      sol.x[j] = std::clamp(0.0, std::min(model.lower[j], model.upper[j]),
                            std::max(model.lower[j], model.upper[j]));
    }
    sol.objective = model.objective(sol.x);
    return sol;
  }

  Engine engine(red, opts);
  Engine::Result res = engine.run();

  sol.x = red.fixed;
  for (int i = 0; i < red.n; ++i) sol.x[red.full_of[i]] = res.x[i];
  sol.iterations = res.iterations;
  sol.objective = model.objective(sol.x);
  for (std::size_t k = 0; k < red.eq_rows.size(); ++k) sol.eq_duals[red.eq_rows[k]] = res.y[k];
  int o = 0;
  for (std::size_t k = 0; k < red.ineq_rows.size(); ++k) {
    sol.ineq_duals[red.ineq_rows[k]] = res.z[o++];
  }
  for (std::size_t k = 0; k < red.quad_rows.size(); ++k) {
    sol.quad_duals[red.quad_rows[k]] = res.z[o++];
  }
  for (int k = 0; k < red.mL(); ++k) sol.lower_duals[red.full_of[red.lo_idx[k]]] = res.z[o++];
  for (int k = 0; k < red.mU(); ++k) sol.upper_duals[red.full_of[red.up_idx[k]]] = res.z[o++];

  // Fixed columns: their box multiplier absorbs the reduced gradient.
  std::vector<double> g(N, 0.0);
  for (int j = 0; j < N; ++j) g[j] = 2.0 * model.obj_quad[j] * sol.x[j] + model.obj_lin[j];
  for (std::size_t k = 0; k < model.eq.size(); ++k) {
    const SparseRow& row = model.eq[k];
    for (std::size_t i = 0; i < row.cols.size(); ++i) g[row.cols[i]] += row.vals[i] * sol.eq_duals[k];
  }
  for (std::size_t k = 0; k < model.ineq.size(); ++k) {
    const SparseRow& row = model.ineq[k];
    for (std::size_t i = 0; i < row.cols.size(); ++i) {
      g[row.cols[i]] += row.vals[i] * sol.ineq_duals[k];
    }
  }
  for (std::size_t k = 0; k < model.quad.size(); ++k) {
    const QuadRow& row = model.quad[k];
    for (std::size_t i = 0; i < row.lin.cols.size(); ++i) {
      g[row.lin.cols[i]] += row.lin.vals[i] * sol.quad_duals[k];
    }
    for (std::size_t i = 0; i < row.qcols.size(); ++i) {
      g[row.qcols[i]] += 2.0 * row.qvals[i] * sol.x[row.qcols[i]] * sol.quad_duals[k];
    }
  }
  for (int j = 0; j < N; ++j) {
    if (!red.is_fixed[j]) continue;
    if (g[j] > 0) {
      sol.lower_duals[j] = g[j];
    } else {
      sol.upper_duals[j] = -g[j];
    }
  }

  Violation v = evaluate_violation(model, sol.x, false);
  sol.residuals.eq = v.eq;
  sol.residuals.ineq = std::max(v.ineq, v.bounds);
  sol.residuals.gap = res.gap;

  if (res.converged) {
    sol.status = SolveStatus::kOptimal;
    return sol;
  }
  sol.status = SolveStatus::kMaxIter;
  if (!allow_phase1) return sol;

  SolveOptions p1 = opts;
  p1.feas_tol = std::max(opts.feas_tol, 1e-9);
  p1.opt_tol = std::max(opts.opt_tol, 1e-9);
  Solution phase1 = run_ipm(elastic(model), p1, false);
  const double threshold = 1e-6;
  if (phase1.status == SolveStatus::kInfeasible ||
      (phase1.status == SolveStatus::kOptimal && phase1.objective > threshold)) {
    sol.status = SolveStatus::kInfeasible;
  }
  return sol;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kMaxIter:
      return "MaxIter";
    case SolveStatus::kInfeasible:
      return "Infeasible";
  }
  return "?";
}

Solution InteriorPointSolver::solve(const StandardModel& model,
                                    const SolveOptions& opts) const {
  return run_ipm(model, opts, true);
}

Solution solve_convex(const StandardModel& model, const SolveOptions& opts) {
  if (model.num_integral() > 0) {
    throw ConfigError("solve_convex needs a model without integral columns");
  }
  return InteriorPointSolver().solve(model, opts);
}

}  // namespace ogpf
