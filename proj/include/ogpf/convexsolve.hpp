#ifndef OGPF_CONVEXSOLVE_HPP
#define OGPF_CONVEXSOLVE_HPP

// Convex solvers for the relaxed model: a centralized primal-dual interior
// point method and an area-decomposed consensus ADMM built on top of it.

#include <memory>
#include <string>
#include <vector>

#include "ogpf/mipbuild.hpp"
#include "ogpf/model.hpp"

namespace ogpf {

// Optimal means: every row and bound within feas_tol, the Lagrangian
// gradient within opt_tol * (1 + |grad f|_inf) and s'z <= opt_tol * max(1, |f|).
struct SolveOptions {
  double feas_tol = 1e-10;
  double opt_tol = 1e-10;
  int max_iter = 200;
};

enum class SolveStatus { kOptimal, kMaxIter, kInfeasible };

std::string to_string(SolveStatus s);

struct Residuals {
  double eq = 0.0;    // max |a.x - rhs| over equality rows
  double ineq = 0.0;  // max violation over inequality rows, quad rows, bounds
  double gap = 0.0;   // complementarity s'z
};

struct Solution {
  std::vector<double> x;
  double objective = 0.0;
  SolveStatus status = SolveStatus::kMaxIter;
  Residuals residuals;
  int iterations = 0;

  // Multipliers of the Lagrangian
  //   f + y'(Ax - b) + z'(Gx - h) + zq'(q(x) - h_q) + zu'(x - u) + zl'(l - x)
  std::vector<double> eq_duals;
  std::vector<double> ineq_duals;
  std::vector<double> quad_duals;
  std::vector<double> lower_duals;
  std::vector<double> upper_duals;

  // Consensus mode only.
  int outer_iterations = 0;
  std::vector<double> primal_residual_history;
  std::vector<double> dual_residual_history;
  double final_rho = 0.0;
};

// Adapter seam: a convex backend takes a model without integral columns and
// returns primal and dual vectors.
class ConvexSolver {
 public:
  virtual ~ConvexSolver() = default;
  virtual Solution solve(const StandardModel& model, const SolveOptions& opts) const = 0;
};

class InteriorPointSolver : public ConvexSolver {
 public:
  Solution solve(const StandardModel& model, const SolveOptions& opts) const override;
};

// Solves with the default interior point backend. Integral columns are
// rejected with ConfigError.
Solution solve_convex(const StandardModel& model, const SolveOptions& opts = {});

struct ConsensusOptions {
  double rho = 1.0;
  int max_outer = 500;
  double primal_tol = 1e-6;
  double dual_tol = 1e-6;
  // Residual balancing: rescale rho when one residual dominates the other by
  // this factor. Disabled when <= 1.
  double balance_factor = 10.0;
  // Over-relaxation weight in (0, 2); 1 is plain ADMM.
  double over_relaxation = 1.8;
  // Local solves only need to be accurate relative to the outer tolerances.
  SolveOptions inner{1e-8, 1e-8, 200};
};

// Consensus ADMM over the area partition. Each area keeps a private copy of
// the foreign columns its coupling rows touch; copies are driven to agree
// with the owner's value. Area subproblems of one outer iteration are
// independent of each other.
Solution solve_consensus(const StandardModel& model, const std::vector<AreaView>& views,
                         const ConsensusOptions& opts = {},
                         const ConvexSolver* backend = nullptr);

}  // namespace ogpf

#endif  // OGPF_CONVEXSOLVE_HPP
