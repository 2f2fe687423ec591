#include "ogpf/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "ogpf/errors.hpp"
#include "ogpf/feascheck.hpp"

namespace ogpf {

int PipeBinaries::region() const {
  for (std::size_t m = 0; m < deltas.size(); ++m) {
    if (deltas[m] == 1) return static_cast<int>(m);
  }
  return -1;
}

namespace {

PipeBinaries binaries_for_region(int k, int r, int delta_psi) {
  PipeBinaries b;
  b.delta_psi = delta_psi;
  b.deltas.assign(r, 0);
  b.alphas.assign(r, 0);
  b.betas.assign(r, 0);
  for (int m = 0; m < r; ++m) {
    b.deltas[m] = m == k ? 1 : 0;
    b.alphas[m] = m >= k ? 1 : 0;
    b.betas[m] = m <= k ? 1 : 0;
  }
  return b;
}

}  // namespace

PipeBinaries recover_orientation(double phi, const PwaCurve& curve) {
  return binaries_for_region(curve.region_of(phi), curve.r(), phi >= 0 ? 1 : 0);
}

BinaryAssignment recover_binaries(std::span<const double> phi_star,
                                  const std::vector<PwaCurve>& curves, double tol) {
  BinaryAssignment out;
  out.pipes.resize(curves.size());
  for (std::size_t k = 0; k + 1 < curves.size(); k += 2) {
    const PwaCurve& curve = curves[k];
    const double phi = phi_star[k];
    if (std::abs(phi) > curve.phi_cap + tol) {
      throw OutOfRange("flow " + std::to_string(phi) + " on " + curve.pipe +
                       " outside [-cap, cap]");
    }
    PipeBinaries fwd = recover_orientation(phi, curve);
    const int r = curve.r();
    out.pipes[k + 1] = binaries_for_region(r - 1 - fwd.region(), r, 1 - fwd.delta_psi);
    out.pipes[k] = std::move(fwd);
  }
  return out;
}

double PressureLp::residual_norm(std::span<const double> psi) const {
  double worst = 0.0;
  for (int k = 0; k < rows(); ++k) {
    const double v = sign[k] * (psi[from[k]] - psi[to[k]]) - theta[k];
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

PressureLp build_pressure_lp(const NetworkInstance& inst, const EdgeClassification& edges,
                             const BinaryAssignment& z, std::span<const double> phi_star,
                             const std::vector<PwaCurve>& curves) {
  PressureLp lp;
  lp.num_nodes = static_cast<int>(inst.gas_nodes.size());
  for (const GasNode& n : inst.gas_nodes) {
    lp.psi_min.push_back(n.psi_min);
    lp.psi_max.push_back(n.psi_max);
  }
  for (std::size_t k = 0; k < edges.internal_directed.size(); ++k) {
    const DirectedPipe& d = edges.internal_directed[k];
    const PipeBinaries& b = z.pipes[k];
    lp.from.push_back(d.from);
    lp.to.push_back(d.to);
    lp.sign.push_back(2.0 * b.delta_psi - 1.0);
    double theta = 0.0;
    for (int m = 0; m < curves[k].r(); ++m) {
      if (b.deltas[m]) theta += curves[k].segments[m].value(phi_star[k]);
    }
    lp.theta.push_back(theta);
  }
  return lp;
}

PressureSolution solve_pressure_lp(const PressureLp& lp, const SolveOptions& opts) {
  StandardModel m;
  for (int n = 0; n < lp.num_nodes; ++n) {
    m.add_var("psi" + std::to_string(n), lp.psi_min[n], lp.psi_max[n]);
  }
  const int t = m.add_var("t", 0.0, kInf);
  m.obj_lin[t] = 1.0;
  for (int k = 0; k < lp.rows(); ++k) {
    for (double side : {1.0, -1.0}) {
      SparseRow row;
      row.label = "norm" + std::to_string(k) + (side > 0 ? "+" : "-");
      row.add(lp.from[k], side * lp.sign[k]);
      row.add(lp.to[k], -side * lp.sign[k]);
      row.add(t, -1.0);
      row.rhs = side * lp.theta[k];
      m.ineq.push_back(std::move(row));
    }
  }
  Solution s = solve_convex(m, opts);
  PressureSolution out;
  out.psi.assign(s.x.begin(), s.x.begin() + lp.num_nodes);
  for (int n = 0; n < lp.num_nodes; ++n) {
    out.psi[n] = std::clamp(out.psi[n], lp.psi_min[n], lp.psi_max[n]);
  }
  out.j_psi = lp.residual_norm(out.psi);
  return out;
}

AuxValues update_aux(const EdgeClassification& edges, const BinaryAssignment& z,
                     std::span<const double> psi_tilde, std::span<const double> phi_star) {
  AuxValues aux;
  for (std::size_t k = 0; k < edges.internal_directed.size(); ++k) {
    const PipeBinaries& b = z.pipes[k];
    aux.y_psi.push_back(b.delta_psi * psi_tilde[edges.internal_directed[k].from]);
    std::vector<double> y(b.deltas.size());
    for (std::size_t m = 0; m < y.size(); ++m) y[m] = b.deltas[m] * phi_star[k];
    aux.y_flow.push_back(std::move(y));
  }
  return aux;
}

std::string to_string(Certificate c) {
  return c == Certificate::kOptimal ? "Optimal" : "Approximate";
}

Deviation weymouth_deviation(double phi, double psi_i, double psi_j, double c_f,
                             double press_tol) {
  const double dpsi = psi_i - psi_j;
  if (std::abs(dpsi) < press_tol) return {phi, true};
  const double s = dpsi > 0 ? 1.0 : -1.0;
  const double w = s * c_f * std::sqrt(std::abs(dpsi));
  return {(phi - w) / w, false};
}

RecoveryResult assemble_and_certify(const NetworkInstance& inst, const BuildResult& build,
                                    std::span<const double> u_relaxed,
                                    const BinaryAssignment& z,
                                    const PressureSolution& pressures, const AuxValues& aux,
                                    const RecoveryOptions& opts) {
  const VarIndex& ix = build.index;
  RecoveryResult res;
  res.binaries = z;
  res.psi_tilde = pressures.psi;
  res.j_psi = pressures.j_psi;
  res.u_star.assign(u_relaxed.begin(), u_relaxed.end());
  std::vector<double>& u = res.u_star;
  for (int n = 0; n < static_cast<int>(inst.gas_nodes.size()); ++n) {
    u[ix.col(VarKind::kPressure, n)] = pressures.psi[n];
  }
  for (int k = 0; k < static_cast<int>(z.pipes.size()); ++k) {
    const PipeBinaries& b = z.pipes[k];
    u[ix.col(VarKind::kDeltaPsi, k)] = b.delta_psi;
    u[ix.col(VarKind::kAuxPsi, k)] = aux.y_psi[k];
    for (int m = 0; m < static_cast<int>(b.deltas.size()); ++m) {
      u[ix.col(VarKind::kAlpha, k, m)] = b.alphas[m];
      u[ix.col(VarKind::kBeta, k, m)] = b.betas[m];
      u[ix.col(VarKind::kDelta, k, m)] = b.deltas[m];
      u[ix.col(VarKind::kAuxFlow, k, m)] = aux.y_flow[k][m];
    }
  }
  res.objective = build.model.objective(u);
  res.certificate = res.j_psi <= opts.cert_tol ? Certificate::kOptimal : Certificate::kApproximate;

  for (std::size_t k = 0; k < build.edges.internal_directed.size(); k += 2) {
    const DirectedPipe& d = build.edges.internal_directed[k];
    res.deviations.push_back(weymouth_deviation(
        u[ix.col(VarKind::kFlow, static_cast<int>(k))], pressures.psi[d.from],
        pressures.psi[d.to], build.curves[k].c_f, opts.press_tol));
  }

  if (res.certificate == Certificate::kOptimal) {
    const double tol = opts.feas_tol + build.config.epsilon + opts.cert_tol;
    Violation v = evaluate_violation(build.model, u, true);
    if (v.max() > tol) {
      throw CertificationBug("certified point violates model row " + v.worst + " by " +
                             std::to_string(v.max()));
    }
    FeasibilityReport f = check_feasibility(inst, build, u);
    if (!f.ok(tol)) {
      throw CertificationBug("certified point fails check " + f.worst + " by " +
                             std::to_string(f.max_violation));
    }
  }
  return res;
}

RecoveryResult run_recovery(const NetworkInstance& inst, const BuildResult& build,
                            std::span<const double> u_relaxed, const RecoveryOptions& opts) {
  const auto& dirs = build.edges.internal_directed;
  std::vector<double> phi(dirs.size());
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    phi[k] = u_relaxed[build.index.col(VarKind::kFlow, static_cast<int>(k))];
  }
  BinaryAssignment z = recover_binaries(phi, build.curves, std::max(opts.feas_tol, 1e-8));
  PressureLp lp = build_pressure_lp(inst, build.edges, z, phi, build.curves);
  PressureSolution ps = solve_pressure_lp(lp);
  AuxValues aux = update_aux(build.edges, z, ps.psi, phi);
  return assemble_and_certify(inst, build, u_relaxed, z, ps, aux, opts);
}

}  // namespace ogpf
