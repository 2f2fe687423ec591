#include "ogpf/model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace ogpf {

double SparseRow::dot(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * x[cols[k]];
  return s;
}

double QuadRow::lhs(std::span<const double> x) const {
  double s = lin.dot(x);
  for (std::size_t k = 0; k < qcols.size(); ++k) {
    s += qvals[k] * x[qcols[k]] * x[qcols[k]];
  }
  return s;
}

int StandardModel::add_var(std::string name, double lo, double hi,
                           bool is_integral) {
  obj_quad.push_back(0.0);
  obj_lin.push_back(0.0);
  lower.push_back(lo);
  upper.push_back(hi);
  integral.push_back(is_integral);
  var_names.push_back(std::move(name));
  return num_vars++;
}

double StandardModel::objective(std::span<const double> x) const {
  double f = obj_const;
  for (int j = 0; j < num_vars; ++j) {
    f += obj_quad[j] * x[j] * x[j] + obj_lin[j] * x[j];
  }
  return f;
}

int StandardModel::num_integral() const {
  return static_cast<int>(std::count(integral.begin(), integral.end(), true));
}

double Violation::max() const {
  return std::max({eq, ineq, bounds, integrality});
}

Violation evaluate_violation(const StandardModel& model, std::span<const double> x,
                             bool check_integrality) {
  Violation v;
  double worst = 0.0;
  auto note = [&](double amount, const std::string& what) {
    if (amount > worst) {
      worst = amount;
      v.worst = what;
    }
  };
  for (const SparseRow& row : model.eq) {
    double r = std::abs(row.dot(x) - row.rhs);
    v.eq = std::max(v.eq, r);
    note(r, row.label);
  }
  for (const SparseRow& row : model.ineq) {
    double r = std::max(0.0, row.dot(x) - row.rhs);
    v.ineq = std::max(v.ineq, r);
    note(r, row.label);
  }
  for (const QuadRow& row : model.quad) {
    double r = std::max(0.0, row.lhs(x) - row.lin.rhs);
    v.ineq = std::max(v.ineq, r);
    note(r, row.lin.label);
  }
  for (int j = 0; j < model.num_vars; ++j) {
    double r = std::max({0.0, model.lower[j] - x[j], x[j] - model.upper[j]});
    v.bounds = std::max(v.bounds, r);
    note(r, model.var_names[j]);
    if (check_integrality && model.integral[j]) {
      double f = std::abs(x[j] - std::round(x[j]));
      v.integrality = std::max(v.integrality, f);
      note(f, model.var_names[j]);
    }
  }
  return v;
}

void write_model_text(const StandardModel& model, std::ostream& out) {
  auto num = [&](double v) -> std::ostream& {
    if (std::isinf(v)) return out << (v > 0 ? "inf" : "-inf");
    return out << std::setprecision(17) << v;
  };
  auto label = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
  out << "ogpf-model 1\n";
  out << "vars " << model.num_vars << " eq " << model.eq.size() << " ineq "
      << model.ineq.size() << " quad " << model.quad.size() << "\n";
  out << "objconst ";
  num(model.obj_const) << "\n";
  for (int j = 0; j < model.num_vars; ++j) {
    out << "var " << j << " " << label(model.var_names[j]) << " ";
    num(model.lower[j]) << " ";
    num(model.upper[j]) << " " << (model.integral[j] ? "I" : "C") << " ";
    num(model.obj_quad[j]) << " ";
    num(model.obj_lin[j]) << "\n";
  }
  auto write_terms = [&](const std::vector<int>& cols, const std::vector<double>& vals) {
    out << cols.size();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      out << " " << cols[k] << " ";
      num(vals[k]);
    }
  };
  auto write_rows = [&](const char* tag, const std::vector<SparseRow>& rows) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out << tag << " " << k << " " << label(rows[k].label) << " ";
      num(rows[k].rhs) << " ";
      write_terms(rows[k].cols, rows[k].vals);
      out << "\n";
    }
  };
  write_rows("eq", model.eq);
  write_rows("ineq", model.ineq);
  for (std::size_t k = 0; k < model.quad.size(); ++k) {
    const QuadRow& q = model.quad[k];
    out << "quad " << k << " " << label(q.lin.label) << " ";
    num(q.lin.rhs) << " ";
    write_terms(q.qcols, q.qvals);
    out << " ";
    write_terms(q.lin.cols, q.lin.vals);
    out << "\n";
  }
}

}  // namespace ogpf
