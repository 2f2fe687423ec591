#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "ogpf/convexsolve.hpp"
#include "ogpf/errors.hpp"
#include "ogpf/mipbuild.hpp"
#include "ogpf/oracle.hpp"

using namespace ogpf;

namespace {

std::string data(const std::string& name) {
  return std::string(OGPF_DATA_DIR) + "/" + name + ".json";
}

// Small QP with every row type: two free-ish columns and one boxed.
StandardModel mixed_model() {
  StandardModel m;
  int x = m.add_var("x", -5.0, 5.0);
  int y = m.add_var("y", 0.0, 3.0);
  int w = m.add_var("w", -kInf, kInf);
  m.obj_quad = {1.0, 2.0, 0.5};
  m.obj_lin = {-4.0, 1.0, -3.0};
  SparseRow e;
  e.add(x, 1.0);
  e.add(y, 1.0);
  e.add(w, 1.0);
  e.rhs = 2.0;
  m.eq.push_back(e);
  SparseRow g;
  g.add(x, 1.0);
  g.add(w, -1.0);
  g.rhs = 0.5;
  m.ineq.push_back(g);
  QuadRow q;
  q.qcols = {x, w};
  q.qvals = {1.0, 1.0};
  q.lin.add(y, -1.0);
  q.lin.rhs = 3.0;
  m.quad.push_back(q);
  return m;
}

double row_lhs(const SparseRow& r, const std::vector<double>& x) { return r.dot(x); }

}  // namespace

TEST_CASE("clipped scalar minimizer") {
  StandardModel m;
  m.add_var("p", 0.0, 0.5);
  m.obj_quad[0] = 1.0;
  m.obj_lin[0] = -2.0;
  m.obj_const = 1.0;
  Solution s = solve_convex(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.x[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(s.objective == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(s.upper_duals[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("contradictory bounds are infeasible") {
  StandardModel m;
  m.add_var("p", 0.0, 0.5);
  m.obj_quad[0] = 1.0;
  SparseRow r;
  r.add(0, -1.0);
  r.rhs = -1.0;  // p >= 1
  m.ineq.push_back(r);
  CHECK(solve_convex(m).status == SolveStatus::kInfeasible);

  StandardModel box;
  box.add_var("p", 1.0, 0.5);
  CHECK(solve_convex(box).status == SolveStatus::kInfeasible);

  StandardModel eqs;
  eqs.add_var("a", -kInf, kInf);
  SparseRow e1, e2;
  e1.add(0, 1.0);
  e1.rhs = 1.0;
  e2.add(0, 1.0);
  e2.rhs = 2.0;
  eqs.eq = {e1, e2};
  CHECK(solve_convex(eqs).status == SolveStatus::kInfeasible);
}

TEST_CASE("integral columns are rejected") {
  StandardModel m;
  m.add_var("z", 0.0, 1.0, true);
  CHECK_THROWS_AS(solve_convex(m), ConfigError);
}

TEST_CASE("KKT conditions hold under finite differences") {
  StandardModel m = mixed_model();
  Solution s = solve_convex(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  const int n = m.num_vars;
  const double h = 1e-6;
  std::vector<double> grad(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::vector<double> xp = s.x, xm = s.x;
    xp[j] += h;
    xm[j] -= h;
    grad[j] = (m.objective(xp) - m.objective(xm)) / (2 * h);
    for (std::size_t k = 0; k < m.eq.size(); ++k) {
      grad[j] += s.eq_duals[k] * (row_lhs(m.eq[k], xp) - row_lhs(m.eq[k], xm)) / (2 * h);
    }
    for (std::size_t k = 0; k < m.ineq.size(); ++k) {
      grad[j] += s.ineq_duals[k] * (row_lhs(m.ineq[k], xp) - row_lhs(m.ineq[k], xm)) / (2 * h);
    }
    for (std::size_t k = 0; k < m.quad.size(); ++k) {
      grad[j] += s.quad_duals[k] * (m.quad[k].lhs(xp) - m.quad[k].lhs(xm)) / (2 * h);
    }
    grad[j] += s.upper_duals[j] - s.lower_duals[j];
  }
  for (int j = 0; j < n; ++j) CHECK(std::abs(grad[j]) < 1e-5);

  // Dual signs and complementary slackness.
  for (std::size_t k = 0; k < m.ineq.size(); ++k) {
    CHECK(s.ineq_duals[k] >= -1e-9);
    CHECK(std::abs(s.ineq_duals[k] * (row_lhs(m.ineq[k], s.x) - m.ineq[k].rhs)) < 1e-7);
  }
  for (std::size_t k = 0; k < m.quad.size(); ++k) {
    CHECK(s.quad_duals[k] >= -1e-9);
    CHECK(std::abs(s.quad_duals[k] * (m.quad[k].lhs(s.x) - m.quad[k].lin.rhs)) < 1e-7);
  }
  for (int j = 0; j < n; ++j) {
    CHECK(s.lower_duals[j] >= -1e-9);
    CHECK(s.upper_duals[j] >= -1e-9);
  }
  Violation v = evaluate_violation(m, s.x, false);
  CHECK(v.max() <= 1e-8);
}

TEST_CASE("optimum is not improved by feasible perturbations") {
  StandardModel m = mixed_model();
  Solution s = solve_convex(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  // Move along the equality's null space and keep only feasible points.
  const std::vector<std::vector<double>> dirs = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
  for (const auto& d : dirs) {
    for (double t : {-1e-3, 1e-3, -1e-1, 1e-1}) {
      std::vector<double> x = s.x;
      for (int j = 0; j < 3; ++j) x[j] += t * d[j];
      if (evaluate_violation(m, x, false).max() > 0) continue;
      CHECK(m.objective(x) >= s.objective - 1e-9);
    }
  }
}

TEST_CASE("relaxation of the two-area instance bounds the brute-force optimum") {
  NetworkInstance inst = load_instance(data("small2area"));
  BuildResult b = build_model(inst, PwaConfig{2, 1e-6});
  Solution s = solve_convex(relax(b.model));
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.residuals.eq <= 1e-8);
  CHECK(s.residuals.ineq <= 1e-8);
  OracleResult orc = enumerate_solve(b);
  CHECK(s.objective <= orc.best_objective + 1e-8);
}

TEST_CASE("single-area consensus is one outer iteration") {
  NetworkInstance inst = load_instance(data("radial1"));
  BuildResult b = build_model(inst, PwaConfig{4, 1e-6});
  StandardModel r = relax(b.model);
  Solution c = solve_consensus(r, area_views(b, inst));
  Solution s = solve_convex(r);
  CHECK(c.status == SolveStatus::kOptimal);
  CHECK(c.outer_iterations == 1);
  CHECK(c.objective == doctest::Approx(s.objective).epsilon(1e-7));
}

TEST_CASE("two areas agreeing on one value meet halfway") {
  StandardModel m;
  m.add_var("x1", -10.0, 10.0);
  m.add_var("x2", -10.0, 10.0);
  m.obj_quad = {1.0, 1.0};
  m.obj_lin = {-2.0, -6.0};
  m.obj_const = 10.0;  // (x1 - 1)^2 + (x2 - 3)^2
  SparseRow link;
  link.add(0, 1.0);
  link.add(1, -1.0);
  m.eq.push_back(link);
  AreaView a1, a2;
  a1.area = 1;
  a1.columns = {0};
  a1.coupling_rows = {0};
  a1.neighbor_columns = {1};
  a2.area = 2;
  a2.columns = {1};
  Solution s = solve_consensus(m, {a1, a2});
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.x[0] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(s.x[1] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(s.primal_residual_history.size() == static_cast<std::size_t>(s.outer_iterations));
}

TEST_CASE("consensus agrees with the centralized relaxation") {
  for (const char* name : {"small2area", "mesh2area"}) {
    CAPTURE(name);
    NetworkInstance inst = load_instance(data(name));
    BuildResult b = build_model(inst, PwaConfig{4, 1e-6});
    StandardModel r = relax(b.model);
    Solution c = solve_consensus(r, area_views(b, inst));
    Solution s = solve_convex(r);
    REQUIRE(c.status == SolveStatus::kOptimal);
    CHECK(c.outer_iterations <= 500);
    CHECK(std::abs(c.objective - s.objective) <= 1e-4 * std::abs(s.objective));
  }
}

TEST_CASE("consensus uses the supplied backend") {
  struct Counting : ConvexSolver {
    mutable int calls = 0;
    Solution solve(const StandardModel& m, const SolveOptions& o) const override {
      ++calls;
      return InteriorPointSolver().solve(m, o);
    }
  } backend;
  NetworkInstance inst = load_instance(data("radial1"));
  BuildResult b = build_model(inst, PwaConfig{2, 1e-6});
  Solution c = solve_consensus(relax(b.model), area_views(b, inst), {}, &backend);
  CHECK(c.status == SolveStatus::kOptimal);
  CHECK(backend.calls == 1);
}

TEST_CASE("consensus option validation") {
  NetworkInstance inst = load_instance(data("radial1"));
  BuildResult b = build_model(inst, PwaConfig{2, 1e-6});
  ConsensusOptions o;
  o.rho = 0.0;
  CHECK_THROWS_AS(solve_consensus(relax(b.model), area_views(b, inst), o), ConfigError);
  o = {};
  o.over_relaxation = 2.0;
  CHECK_THROWS_AS(solve_consensus(relax(b.model), area_views(b, inst), o), ConfigError);
  CHECK_THROWS_AS(solve_consensus(b.model, area_views(b, inst)), ConfigError);
}
