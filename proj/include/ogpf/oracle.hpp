#ifndef OGPF_ORACLE_HPP
#define OGPF_ORACLE_HPP

// Brute-force mixed-integer optimum for small instances. Fixing the active
// region of every undirected internal pipe fixes all binaries, and what is
// left is a convex problem in the continuous variables.

#include <cstdint>
#include <vector>

#include "ogpf/convexsolve.hpp"
#include "ogpf/mipbuild.hpp"

namespace ogpf {

struct OracleOptions {
  std::int64_t cap = 100000;
  SolveOptions solve;
};

struct OracleEntry {
  std::vector<int> regions;  // 0-based forward region per undirected pipe
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;  // meaningful when status is Optimal
};

struct OracleResult {
  double best_objective = 0.0;
  std::vector<int> best_configuration;
  std::int64_t num_configurations = 0;
  std::vector<OracleEntry> log;
  // Full point of the mixed-integer model for the best configuration,
  // binaries and auxiliaries included.
  std::vector<double> best_x;
};

// r^pipes, saturating at INT64_MAX.
std::int64_t configuration_count(int num_pipes, int r);

// Throws CapExceeded when r^pipes > opts.cap and AllInfeasible when no
// configuration admits a solution. Pipes are enumerated in the order given
// by `order` (a permutation of undirected internal pipe positions), or in
// natural order when empty.
OracleResult enumerate_solve(const BuildResult& build, const OracleOptions& opts = {},
                             const std::vector<int>& order = {});

}  // namespace ogpf

#endif  // OGPF_ORACLE_HPP
