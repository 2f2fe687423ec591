#ifndef OGPF_PWA_HPP
#define OGPF_PWA_HPP

// Piecewise-affine approximation of phi^2 / c^2 over [-cap, cap] and the
// mixed-logical (big-M) rows that select the active piece.

#include <span>
#include <string>
#include <vector>

#include "ogpf/model.hpp"

namespace ogpf {

enum class BreakpointScheme { kUniform };

struct PwaConfig {
  int r = 4;
  double epsilon = 1e-6;
  BreakpointScheme breakpoint_scheme = BreakpointScheme::kUniform;

  // Throws ConfigError unless r is even and >= 2 and epsilon > 0.
  void validate() const;
};

struct PwaSegment {
  int m = 1;  // 1-based region index
  double lo = 0.0;
  double hi = 0.0;
  double a = 0.0;
  double b = 0.0;

  double value(double phi) const { return a * phi + b; }
};

struct PwaCurve {
  std::string pipe;
  double c_f = 1.0;
  double phi_cap = 1.0;
  std::vector<PwaSegment> segments;

  int r() const { return static_cast<int>(segments.size()); }
  // 0-based index of the segment containing phi; at a shared breakpoint the
  // segment farther from zero wins (upper one at 0). phi is clamped to the
  // span first.
  int region_of(double phi) const;
  double value(double phi) const { return segments[region_of(phi)].value(phi); }
  double exact(double phi) const { return phi * phi / (c_f * c_f); }
};

// Chord interpolation of phi^2/c_f^2 on a uniform grid of r regions.
PwaCurve fit_pwa(double c_f, double phi_cap, const PwaConfig& cfg,
                 std::string pipe = {});

// max over [lo, hi] of the chord minus phi^2/c_f^2, i.e. (hi-lo)^2/(4 c_f^2).
double max_region_error(const PwaSegment& seg, double c_f);

// Slot layout of one orientation's local variables. The first 4 + r slots
// are the continuous block y = (psi_i, psi_j, phi, y_psi, y_1..y_r), then
// the 1 + 3r binaries z = (delta_psi, alpha_1..r, beta_1..r, delta_1..r),
// then three slots owned by the mirrored orientation (j,i).
struct MldLayout {
  int r = 2;

  int psi_from() const { return 0; }
  int psi_to() const { return 1; }
  int flow() const { return 2; }
  int aux_psi() const { return 3; }
  int aux_flow(int m) const { return 4 + m; }  // m is 0-based
  int delta_psi() const { return 4 + r; }
  int alpha(int m) const { return 5 + r + m; }
  int beta(int m) const { return 5 + 2 * r + m; }
  int delta(int m) const { return 5 + 3 * r + m; }
  int partner_flow() const { return 5 + 4 * r; }
  int partner_aux_psi() const { return 6 + 4 * r; }
  int partner_delta_psi() const { return 7 + 4 * r; }
  int size() const { return 8 + 4 * r; }
  bool is_binary(int slot) const { return slot >= delta_psi() && slot < partner_flow(); }
};

struct MldPipeBounds {
  double psi_from_min = 0.0;
  double psi_from_max = 0.0;
  double psi_to_min = 0.0;
  double psi_to_max = 0.0;
};

// Rows of one directed internal pipe in local slot coordinates.
struct MldBlock {
  std::string pipe;
  MldLayout layout;
  // Rows that belong to this orientation alone (the region simplex).
  std::vector<SparseRow> equalities;
  // Rows that tie the two orientations together: the orientation-coupled
  // flow equality, flow reciprocity and the delta_psi link. Emitted once per
  // physical pipe, from the forward orientation.
  std::vector<SparseRow> coupled_equalities;
  // Logic blocks 1-5, in order.
  std::vector<SparseRow> inequalities;

  int num_binaries() const { return 1 + 3 * layout.r; }
  int num_extra_continuous() const { return 1 + layout.r; }

  // Largest violation over all rows at the local point.
  double max_violation(std::span<const double> local, bool include_coupled) const;
};

// Throws MissingBounds if a pressure bound or the flow cap is not finite.
MldBlock emit_mld(const std::string& pipe, const MldPipeBounds& bounds,
                  const PwaCurve& curve, const PwaConfig& cfg);

}  // namespace ogpf

#endif  // OGPF_PWA_HPP
