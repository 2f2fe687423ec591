#include "ogpf/pwa.hpp"

#include <algorithm>
#include <cmath>

#include "ogpf/errors.hpp"

namespace ogpf {

void PwaConfig::validate() const {
  if (r < 2 || r % 2 != 0) {
    throw ConfigError("r must be even and at least 2 (got " + std::to_string(r) + ")");
  }
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive");
  }
}

int PwaCurve::region_of(double phi) const {
  const int n = r();
  phi = std::clamp(phi, -phi_cap, phi_cap);
  if (phi >= 0) {
    for (int k = n / 2; k < n; ++k) {
      if (phi < segments[k].hi) return k;
    }
    return n - 1;
  }
  for (int k = n / 2 - 1; k >= 0; --k) {
    if (phi > segments[k].lo) return k;
  }
  return 0;
}

PwaCurve fit_pwa(double c_f, double phi_cap, const PwaConfig& cfg, std::string pipe) {
  cfg.validate();
  if (!(c_f > 0) || !(phi_cap > 0) || !std::isfinite(phi_cap)) {
    throw ConfigError("fit_pwa needs c_f > 0 and a finite phi_cap > 0");
  }
  const int r = cfg.r;
  if (cfg.epsilon >= phi_cap / r) {
    throw ConfigError("epsilon must be much smaller than the region width");
  }
  std::vector<double> bp(r + 1);
  for (int k = 0; k <= r; ++k) bp[k] = phi_cap * (2.0 * k - r) / r;
  bp.front() = -phi_cap;
  bp.back() = phi_cap;

  PwaCurve curve;
  curve.pipe = std::move(pipe);
  curve.c_f = c_f;
  curve.phi_cap = phi_cap;
  const double c2 = c_f * c_f;
  for (int m = 0; m < r; ++m) {
    PwaSegment s;
    s.m = m + 1;
    s.lo = bp[m];
    s.hi = bp[m + 1];
    s.a = (s.lo + s.hi) / c2;
    s.b = -s.lo * s.hi / c2;
    curve.segments.push_back(s);
  }
  return curve;
}

double max_region_error(const PwaSegment& seg, double c_f) {
  double w = seg.hi - seg.lo;
  return w * w / (4.0 * c_f * c_f);
}

double MldBlock::max_violation(std::span<const double> local,
                               bool include_coupled) const {
  double v = 0.0;
  for (const SparseRow& row : equalities) v = std::max(v, std::abs(row.dot(local) - row.rhs));
  if (include_coupled) {
    for (const SparseRow& row : coupled_equalities) {
      v = std::max(v, std::abs(row.dot(local) - row.rhs));
    }
  }
  for (const SparseRow& row : inequalities) v = std::max(v, row.dot(local) - row.rhs);
  return v;
}

MldBlock emit_mld(const std::string& pipe, const MldPipeBounds& bd,
                  const PwaCurve& curve, const PwaConfig& cfg) {
  for (double v : {bd.psi_from_min, bd.psi_from_max, bd.psi_to_min, bd.psi_to_max,
                   curve.phi_cap}) {
    if (!std::isfinite(v)) {
      throw MissingBounds("non-finite pressure or flow bound on pipe " + pipe);
    }
  }
  const int r = curve.r();
  const double eps = cfg.epsilon;
  const double cap = curve.phi_cap;
  MldBlock blk;
  blk.pipe = pipe;
  blk.layout.r = r;
  const MldLayout& L = blk.layout;

  auto row = [&](std::string label, double rhs) {
    SparseRow row;
    row.label = pipe + ":" + std::move(label);
    row.rhs = rhs;
    return row;
  };
  auto& ineq = blk.inequalities;

  // 1. [delta_psi = 1] <=> [psi_i >= psi_j]
  {
    const double big = bd.psi_to_max - bd.psi_from_min;  // -(psi_i_min - psi_j_max)
    SparseRow a = row("psi_logic_a", big);
    a.add(L.psi_from(), -1.0);
    a.add(L.psi_to(), 1.0);
    a.add(L.delta_psi(), big);
    ineq.push_back(std::move(a));
    const double span = bd.psi_from_max - bd.psi_to_min;
    SparseRow b = row("psi_logic_b", -eps);
    b.add(L.psi_from(), 1.0);
    b.add(L.psi_to(), -1.0);
    b.add(L.delta_psi(), -(span + eps));
    ineq.push_back(std::move(b));
  }
  // 2. [delta_psi = 1] <=> [phi >= 0]
  {
    SparseRow a = row("phi_sign_a", cap);
    a.add(L.flow(), -1.0);
    a.add(L.delta_psi(), cap);
    ineq.push_back(std::move(a));
    SparseRow b = row("phi_sign_b", -eps);
    b.add(L.flow(), 1.0);
    b.add(L.delta_psi(), -(cap + eps));
    ineq.push_back(std::move(b));
  }
  // 3. [delta_m = 1] <=> [lo_m <= phi <= hi_m] through alpha_m, beta_m.
  for (int m = 0; m < r; ++m) {
    const double lo = curve.segments[m].lo;
    const double hi = curve.segments[m].hi;
    const std::string tag = "[" + std::to_string(m + 1) + "]";
    SparseRow a1 = row("alpha_a" + tag, cap);
    a1.add(L.flow(), 1.0);
    a1.add(L.alpha(m), cap - hi);
    ineq.push_back(std::move(a1));
    SparseRow a2 = row("alpha_b" + tag, -hi - eps);
    a2.add(L.flow(), -1.0);
    a2.add(L.alpha(m), -cap - hi - eps);
    ineq.push_back(std::move(a2));
    SparseRow b1 = row("beta_a" + tag, cap);
    b1.add(L.flow(), -1.0);
    b1.add(L.beta(m), cap + lo);
    ineq.push_back(std::move(b1));
    SparseRow b2 = row("beta_b" + tag, lo - eps);
    b2.add(L.flow(), 1.0);
    b2.add(L.beta(m), -cap + lo - eps);
    ineq.push_back(std::move(b2));
    SparseRow l1 = row("logic_alpha" + tag, 0.0);
    l1.add(L.alpha(m), -1.0);
    l1.add(L.delta(m), 1.0);
    ineq.push_back(std::move(l1));
    SparseRow l2 = row("logic_beta" + tag, 0.0);
    l2.add(L.beta(m), -1.0);
    l2.add(L.delta(m), 1.0);
    ineq.push_back(std::move(l2));
    SparseRow l3 = row("logic_and" + tag, 1.0);
    l3.add(L.alpha(m), 1.0);
    l3.add(L.beta(m), 1.0);
    l3.add(L.delta(m), -1.0);
    ineq.push_back(std::move(l3));
  }
  // 4. y_m = delta_m * phi
  for (int m = 0; m < r; ++m) {
    const std::string tag = "[" + std::to_string(m + 1) + "]";
    SparseRow r1 = row("yflow_lo" + tag, 0.0);
    r1.add(L.aux_flow(m), -1.0);
    r1.add(L.delta(m), -cap);
    ineq.push_back(std::move(r1));
    SparseRow r2 = row("yflow_phi_hi" + tag, cap);
    r2.add(L.aux_flow(m), 1.0);
    r2.add(L.flow(), -1.0);
    r2.add(L.delta(m), cap);
    ineq.push_back(std::move(r2));
    SparseRow r3 = row("yflow_hi" + tag, 0.0);
    r3.add(L.aux_flow(m), 1.0);
    r3.add(L.delta(m), -cap);
    ineq.push_back(std::move(r3));
    SparseRow r4 = row("yflow_phi_lo" + tag, cap);
    r4.add(L.aux_flow(m), -1.0);
    r4.add(L.flow(), 1.0);
    r4.add(L.delta(m), cap);
    ineq.push_back(std::move(r4));
  }
  // 5. y_psi = delta_psi * psi_i
  {
    const double lo = bd.psi_from_min, hi = bd.psi_from_max;
    SparseRow r1 = row("ypsi_lo", 0.0);
    r1.add(L.aux_psi(), -1.0);
    r1.add(L.delta_psi(), lo);
    ineq.push_back(std::move(r1));
    SparseRow r2 = row("ypsi_psi_hi", -lo);
    r2.add(L.aux_psi(), 1.0);
    r2.add(L.psi_from(), -1.0);
    r2.add(L.delta_psi(), -lo);
    ineq.push_back(std::move(r2));
    SparseRow r3 = row("ypsi_hi", 0.0);
    r3.add(L.aux_psi(), 1.0);
    r3.add(L.delta_psi(), -hi);
    ineq.push_back(std::move(r3));
    SparseRow r4 = row("ypsi_psi_lo", hi);
    r4.add(L.aux_psi(), -1.0);
    r4.add(L.psi_from(), 1.0);
    r4.add(L.delta_psi(), hi);
    ineq.push_back(std::move(r4));
  }

  SparseRow simplex = row("simplex", 1.0);
  for (int m = 0; m < r; ++m) simplex.add(L.delta(m), 1.0);
  blk.equalities.push_back(std::move(simplex));

  // sum_m (a_m y_m + b_m delta_m) = 2 y_psi + 2 y'_psi - psi_i - psi_j
  SparseRow flow_eq = row("pwa_flow", 0.0);
  for (int m = 0; m < r; ++m) {
    flow_eq.add(L.aux_flow(m), curve.segments[m].a);
    flow_eq.add(L.delta(m), curve.segments[m].b);
  }
  flow_eq.add(L.aux_psi(), -2.0);
  flow_eq.add(L.partner_aux_psi(), -2.0);
  flow_eq.add(L.psi_from(), 1.0);
  flow_eq.add(L.psi_to(), 1.0);
  blk.coupled_equalities.push_back(std::move(flow_eq));

  SparseRow recip = row("reciprocity", 0.0);
  recip.add(L.flow(), 1.0);
  recip.add(L.partner_flow(), 1.0);
  blk.coupled_equalities.push_back(std::move(recip));

  SparseRow link = row("delta_psi_link", 1.0);
  link.add(L.delta_psi(), 1.0);
  link.add(L.partner_delta_psi(), 1.0);
  blk.coupled_equalities.push_back(std::move(link));
  return blk;
}

}  // namespace ogpf
