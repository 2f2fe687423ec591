#ifndef OGPF_REPORT_HPP
#define OGPF_REPORT_HPP

// Experiment drivers behind the command-line tool: one two-stage solve,
// r-sweeps, Monte Carlo demand studies and the oracle cross-check. Every
// driver returns a Report that serializes to JSON.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "ogpf/convexsolve.hpp"
#include "ogpf/netmodel.hpp"
#include "ogpf/recovery.hpp"

namespace ogpf {

enum class SolverMode { kCentralized, kConsensus };

std::string to_string(SolverMode m);
SolverMode parse_mode(const std::string& s);  // ConfigError on unknown names

struct RunConfig {
  std::string instance;
  int r = 4;
  double epsilon = 1e-6;
  double cert_tol = 1e-8;
  SolverMode mode = SolverMode::kCentralized;
  std::uint64_t seed = 1;
  int runs = 1;
  double sigma = 0.1;
  std::string out;
  std::vector<int> r_list{4, 8, 16};
  // When false every timing field is written as 0 so reports of identical
  // runs compare equal byte for byte.
  bool timings = true;
  ConsensusOptions consensus;
  SolveOptions stage1;

  // Throws ConfigError for odd or small r, epsilon <= 0, cert_tol < 0,
  // runs < 1 or sigma outside [0, 1).
  void validate() const;
};

struct RunRecord {
  int run = 0;
  bool ok = false;
  std::string error;
  std::string stage1_status;
  double relaxed_objective = 0.0;
  double objective = 0.0;
  double j_psi = 0.0;
  Certificate certificate = Certificate::kApproximate;
  double mean_abs_dev = 0.0;
  double max_abs_dev = 0.0;
  std::vector<double> deviations;
  double stage1_time = 0.0;
  double stage2_time = 0.0;
  int iterations = 0;
  int outer_iterations = 0;

  double total_time() const { return stage1_time + stage2_time; }
};

struct Aggregates {
  int num_runs = 0;
  int num_ok = 0;
  int num_optimal = 0;
  double fraction_optimal = 0.0;
  // Mean of mean_abs_dev over runs certified Optimal; 0 when there are none.
  double average_deviation = 0.0;
  // Mean total time over runs that completed.
  double average_time = 0.0;
};

Aggregates aggregate(const std::vector<RunRecord>& runs);

struct OracleSummary {
  double oracle_objective = 0.0;
  double two_stage_objective = 0.0;
  Certificate certificate = Certificate::kApproximate;
  std::int64_t num_configurations = 0;
  int num_feasible = 0;
  std::vector<int> best_configuration;
  double gap = 0.0;  // (two_stage - oracle) / max(1, |oracle|)
};

struct SweepRow {
  int r = 0;
  RunRecord record;
};

struct Report {
  std::string command;
  RunConfig config;
  std::vector<RunRecord> runs;
  Aggregates aggregates;
  std::vector<SweepRow> sweep;
  bool time_trend_ok = true;
  std::optional<OracleSummary> oracle;

  nlohmann::json to_json() const;
  std::string sweep_csv() const;
};

// Stage one then stage two on one instance. Failures are captured in the
// record rather than thrown.
RunRecord solve_two_stage(const NetworkInstance& inst, const RunConfig& cfg);

// Multiplies every bus demand, then every gas node demand, by an independent
// factor drawn uniformly from [1 - sigma, 1 + sigma].
NetworkInstance perturb_demands(const NetworkInstance& inst, double sigma, std::mt19937_64& rng);

Report cmd_solve(const RunConfig& cfg);
Report cmd_sweep_r(const RunConfig& cfg);
Report cmd_montecarlo(const RunConfig& cfg);
Report cmd_oracle(const RunConfig& cfg);

// 0 Optimal, 2 Approximate, 1 when the single solve failed. Studies
// (sweep, Monte Carlo, oracle) return 0 once they complete.
int exit_code(const Report& report);

// Resolves bare instance names against the bundled data directory.
std::string resolve_instance_path(const std::string& name);

}  // namespace ogpf

#endif  // OGPF_REPORT_HPP
