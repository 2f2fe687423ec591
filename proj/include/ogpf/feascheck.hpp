#ifndef OGPF_FEASCHECK_HPP
#define OGPF_FEASCHECK_HPP

// Feasibility check of a point against the mixed-integer gas-power flow
// problem, evaluated from the network data and the physical meaning of each
// variable. It shares no row-generation code with the model builder, so it
// can catch builder mistakes as well as recovery mistakes.

#include <span>
#include <string>

#include "ogpf/mipbuild.hpp"
#include "ogpf/netmodel.hpp"

namespace ogpf {

struct FeasibilityReport {
  double max_violation = 0.0;
  std::string worst;
  int checks = 0;

  bool ok(double tol) const { return max_violation <= tol; }
};

// Checks bounds, power and gas balances, gas conversion, reciprocity, the
// region and sign logic with its epsilon gaps, the auxiliary products and
// the PWA flow equality of every directed internal pipe. Columns are located
// through build.index; everything else is recomputed from inst and cfg.
FeasibilityReport check_feasibility(const NetworkInstance& inst, const BuildResult& build,
                                    std::span<const double> x);

}  // namespace ogpf

#endif  // OGPF_FEASCHECK_HPP
