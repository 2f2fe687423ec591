#ifndef OGPF_RECOVERY_HPP
#define OGPF_RECOVERY_HPP

// Second stage of the two-stage method: recover binaries from the relaxed
// flows, recompute pressures with an infinity-norm LP, rebuild the
// auxiliary variables and certify the assembled point.
//
// Sign convention: delta_psi = 1 exactly when phi >= 0, everywhere.

#include <span>
#include <string>
#include <vector>

#include "ogpf/convexsolve.hpp"
#include "ogpf/mipbuild.hpp"
#include "ogpf/netmodel.hpp"
#include "ogpf/pwa.hpp"

namespace ogpf {

struct PipeBinaries {
  int delta_psi = 0;
  std::vector<int> deltas;
  std::vector<int> alphas;
  std::vector<int> betas;

  int region() const;  // 0-based index of the active region
};

// One entry per directed internal pipe, same order as
// EdgeClassification::internal_directed.
struct BinaryAssignment {
  std::vector<PipeBinaries> pipes;
};

// Binaries for one orientation carrying flow phi. The region is the one
// containing phi, with ties at a breakpoint going to the region farther from
// zero (the upper one at zero). alphas[m] = [m >= k] and betas[m] = [m <= k]
// for the active region k.
PipeBinaries recover_orientation(double phi, const PwaCurve& curve);

// Pairwise recovery. The forward orientation of every pipe is recovered from
// its own flow; the reverse gets the complementary delta_psi and the
// mirrored region, so the sign link holds even at phi = 0. Throws OutOfRange
// when a forward flow lies outside [-cap, cap] by more than tol.
BinaryAssignment recover_binaries(std::span<const double> phi_star,
                                  const std::vector<PwaCurve>& curves, double tol = 1e-8);

// min t  s.t.  -t <= E psi - theta <= t,  psi_min <= psi <= psi_max,  t >= 0.
// Row k of E has +sign[k] at column from[k] and -sign[k] at column to[k].
struct PressureLp {
  int num_nodes = 0;
  std::vector<int> from;
  std::vector<int> to;
  std::vector<double> sign;
  std::vector<double> theta;
  std::vector<double> psi_min;
  std::vector<double> psi_max;

  int rows() const { return static_cast<int>(theta.size()); }
  double residual_norm(std::span<const double> psi) const;  // ||E psi - theta||_inf
};

PressureLp build_pressure_lp(const NetworkInstance& inst, const EdgeClassification& edges,
                             const BinaryAssignment& z, std::span<const double> phi_star,
                             const std::vector<PwaCurve>& curves);

struct PressureSolution {
  std::vector<double> psi;
  double j_psi = 0.0;
};

// The returned J_psi is evaluated directly at the returned (box-clipped)
// pressures rather than read from the LP objective.
PressureSolution solve_pressure_lp(const PressureLp& lp, const SolveOptions& opts = {1e-11, 1e-11, 200});

struct AuxValues {
  std::vector<double> y_psi;               // per directed internal pipe
  std::vector<std::vector<double>> y_flow;  // per directed internal pipe, per region
};

AuxValues update_aux(const EdgeClassification& edges, const BinaryAssignment& z,
                     std::span<const double> psi_tilde, std::span<const double> phi_star);

enum class Certificate { kOptimal, kApproximate };

std::string to_string(Certificate c);

struct RecoveryOptions {
  double cert_tol = 1e-8;
  double feas_tol = 1e-8;
  double press_tol = 1e-9;
};

struct Deviation {
  double value = 0.0;
  bool absolute = false;  // pressures equal; value is the raw flow
};

struct RecoveryResult {
  BinaryAssignment binaries;
  std::vector<double> psi_tilde;
  double j_psi = 0.0;
  Certificate certificate = Certificate::kApproximate;
  std::vector<double> u_star;
  double objective = 0.0;
  // One per undirected internal pipe, evaluated on the forward orientation.
  std::vector<Deviation> deviations;
};

// Copies u_relaxed, overwrites pressures, auxiliaries and binaries, and
// certifies. With an Optimal certificate the point is re-checked against the
// mixed-integer model and the independent feasibility checker at
// feas_tol + epsilon; a failure throws CertificationBug.
RecoveryResult assemble_and_certify(const NetworkInstance& inst, const BuildResult& build,
                                    std::span<const double> u_relaxed,
                                    const BinaryAssignment& z,
                                    const PressureSolution& pressures, const AuxValues& aux,
                                    const RecoveryOptions& opts = {});

// (phi - s c sqrt|dpsi|) / (s c sqrt|dpsi|) with s = sgn(psi_i - psi_j); when
// |dpsi| < press_tol the raw flow is returned with the absolute flag set.
Deviation weymouth_deviation(double phi, double psi_i, double psi_j, double c_f,
                             double press_tol = 1e-9);

// The whole second stage on top of a stage-one solution.
RecoveryResult run_recovery(const NetworkInstance& inst, const BuildResult& build,
                            std::span<const double> u_relaxed,
                            const RecoveryOptions& opts = {});

}  // namespace ogpf

#endif  // OGPF_RECOVERY_HPP
