#ifndef OGPF_MODEL_HPP
#define OGPF_MODEL_HPP

// Standard-form optimization model shared by the builder, the solvers, the
// recovery stage and the oracle.
//
//   min   sum_j q_j x_j^2 + c_j x_j + const
//   s.t.  eq rows:    a.x  = rhs
//         ineq rows:  a.x <= rhs
//         quad rows:  sum_j q_j x_j^2 + a.x <= rhs   (q_j >= 0)
//         lower <= x <= upper,  x_j integral where integral[j]

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ogpf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SparseRow {
  std::vector<int> cols;
  std::vector<double> vals;
  double rhs = 0.0;
  std::string label;

  void add(int col, double val) {
    cols.push_back(col);
    vals.push_back(val);
  }
  double dot(std::span<const double> x) const;
};

struct QuadRow {
  SparseRow lin;
  std::vector<int> qcols;
  std::vector<double> qvals;

  double lhs(std::span<const double> x) const;
};

struct StandardModel {
  int num_vars = 0;
  std::vector<double> obj_quad;
  std::vector<double> obj_lin;
  double obj_const = 0.0;
  std::vector<SparseRow> eq;
  std::vector<SparseRow> ineq;
  std::vector<QuadRow> quad;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integral;
  std::vector<std::string> var_names;

  // Appends a column and returns its index.
  int add_var(std::string name, double lo, double hi, bool is_integral = false);

  double objective(std::span<const double> x) const;
  int num_integral() const;
};

struct Violation {
  double eq = 0.0;
  double ineq = 0.0;  // includes quad rows
  double bounds = 0.0;
  double integrality = 0.0;
  std::string worst;  // label of the worst row or variable

  double max() const;
};

// Largest violation of every row, bound and (if check_integrality) the
// integrality mask at x.
Violation evaluate_violation(const StandardModel& model, std::span<const double> x,
                             bool check_integrality);

// Plain-text export, one record per line:
//   ogpf-model 1
//   vars <n> eq <m_eq> ineq <m_ineq> quad <m_quad>
//   objconst <c>
//   var <j> <name> <lower> <upper> <I|C> <q_j> <c_j>
//   eq <k> <label> <rhs> <nnz> (<col> <val>)...
//   ineq <k> <label> <rhs> <nnz> (<col> <val>)...
//   quad <k> <label> <rhs> <nq> (<col> <q>)... <nnz> (<col> <val>)...
// Infinite bounds are written as inf / -inf.
void write_model_text(const StandardModel& model, std::ostream& out);

}  // namespace ogpf

#endif  // OGPF_MODEL_HPP
