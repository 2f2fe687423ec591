#include "ogpf/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "ogpf/errors.hpp"
#include "ogpf/mipbuild.hpp"
#include "ogpf/oracle.hpp"

#ifndef OGPF_DATA_DIR
#define OGPF_DATA_DIR "data"
#endif

namespace ogpf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const char* kSignConvention =
    "delta_psi = 1 iff phi >= 0 in both the logic rows and the binary recovery; "
    "the alternative reading 'delta_psi = 1 iff phi <= 0' contradicts the flow "
    "equality and is not used";

nlohmann::json record_json(const RunRecord& r) {
  nlohmann::json j;
  j["run"] = r.run;
  j["ok"] = r.ok;
  if (!r.ok) j["error"] = r.error;
  j["stage1_status"] = r.stage1_status;
  j["relaxed_objective"] = r.relaxed_objective;
  j["objective"] = r.objective;
  j["j_psi"] = r.j_psi;
  j["certificate"] = to_string(r.certificate);
  j["mean_abs_dev"] = r.mean_abs_dev;
  j["max_abs_dev"] = r.max_abs_dev;
  j["deviations"] = r.deviations;
  j["time_stage1_s"] = r.stage1_time;
  j["time_stage2_s"] = r.stage2_time;
  j["iterations"] = r.iterations;
  j["outer_iterations"] = r.outer_iterations;
  return j;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(SolverMode m) {
  return m == SolverMode::kCentralized ? "centralized" : "consensus";
}

SolverMode parse_mode(const std::string& s) {
  if (s == "centralized") return SolverMode::kCentralized;
  if (s == "consensus") return SolverMode::kConsensus;
  throw ConfigError("unknown solver mode '" + s + "' (centralized | consensus)");
}

void RunConfig::validate() const {
  PwaConfig{r, epsilon}.validate();
  for (int rr : r_list) PwaConfig{rr, epsilon}.validate();
  if (!(cert_tol >= 0)) throw ConfigError("cert_tol must be >= 0");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (!(sigma >= 0 && sigma < 1)) throw ConfigError("sigma must lie in [0, 1)");
  if (!(consensus.rho > 0)) throw ConfigError("rho must be positive");
}

Aggregates aggregate(const std::vector<RunRecord>& runs) {
  Aggregates a;
  a.num_runs = static_cast<int>(runs.size());
  double dev = 0.0, time = 0.0;
  for (const RunRecord& r : runs) {
    if (!r.ok) continue;
    ++a.num_ok;
    time += r.total_time();
    if (r.certificate == Certificate::kOptimal) {
      ++a.num_optimal;
      dev += r.mean_abs_dev;
    }
  }
  a.fraction_optimal = a.num_runs ? static_cast<double>(a.num_optimal) / a.num_runs : 0.0;
  a.average_deviation = a.num_optimal ? dev / a.num_optimal : 0.0;
  a.average_time = a.num_ok ? time / a.num_ok : 0.0;
  return a;
}

RunRecord solve_two_stage(const NetworkInstance& inst, const RunConfig& cfg) {
  RunRecord rec;
  try {
    auto t0 = Clock::now();
    BuildResult build = build_model(inst, PwaConfig{cfg.r, cfg.epsilon});
    StandardModel relaxed = relax(build.model);
    Solution s1;
    if (cfg.mode == SolverMode::kConsensus) {
      s1 = solve_consensus(relaxed, area_views(build, inst), cfg.consensus);
    } else {
      s1 = solve_convex(relaxed, cfg.stage1);
    }
    rec.stage1_time = seconds_since(t0);
    rec.stage1_status = to_string(s1.status);
    rec.iterations = s1.iterations;
    rec.outer_iterations = s1.outer_iterations;
    rec.relaxed_objective = s1.objective;
    if (s1.status != SolveStatus::kOptimal) {
      throw Error("stage one ended with status " + to_string(s1.status));
    }

    auto t1 = Clock::now();
    RecoveryOptions ro;
    ro.cert_tol = cfg.cert_tol;
    // Certification is relative to the accuracy stage one actually reached.
    ro.feas_tol = std::max({cfg.stage1.feas_tol, s1.residuals.eq, s1.residuals.ineq});
    RecoveryResult rr = run_recovery(inst, build, s1.x, ro);
    rec.stage2_time = seconds_since(t1);
    rec.objective = rr.objective;
    rec.j_psi = rr.j_psi;
    rec.certificate = rr.certificate;
    double sum = 0.0;
    for (const Deviation& d : rr.deviations) {
      rec.deviations.push_back(d.value);
      sum += std::abs(d.value);
      rec.max_abs_dev = std::max(rec.max_abs_dev, std::abs(d.value));
    }
    rec.mean_abs_dev = rr.deviations.empty() ? 0.0 : sum / rr.deviations.size();
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  if (!cfg.timings) rec.stage1_time = rec.stage2_time = 0.0;
  return rec;
}

NetworkInstance perturb_demands(const NetworkInstance& inst, double sigma, std::mt19937_64& rng) {
  NetworkInstance out = inst;
  std::uniform_real_distribution<double> factor(1.0 - sigma, 1.0 + sigma);
  for (Bus& b : out.buses) b.demand_e *= sigma > 0 ? factor(rng) : 1.0;
  for (GasNode& n : out.gas_nodes) n.demand_g *= sigma > 0 ? factor(rng) : 1.0;
  return out;
}

std::string resolve_instance_path(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  fs::path bundled = fs::path(OGPF_DATA_DIR) / name;
  if (fs::exists(bundled)) return bundled.string();
  if (fs::exists(bundled.string() + ".json")) return bundled.string() + ".json";
  return name;
}

Report cmd_solve(const RunConfig& cfg) {
  cfg.validate();
  NetworkInstance inst = load_instance(resolve_instance_path(cfg.instance));
  Report rep;
  rep.command = "solve";
  rep.config = cfg;
  rep.runs.push_back(solve_two_stage(inst, cfg));
  rep.aggregates = aggregate(rep.runs);
  return rep;
}

Report cmd_sweep_r(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.r_list.empty()) throw ConfigError("sweep needs at least one r");
  NetworkInstance inst = load_instance(resolve_instance_path(cfg.instance));
  Report rep;
  rep.command = "sweep-r";
  rep.config = cfg;
  double prev_time = -1.0;
  for (int r : cfg.r_list) {
    RunConfig c = cfg;
    c.r = r;
    RunRecord rec = solve_two_stage(inst, c);
    rec.run = static_cast<int>(rep.sweep.size());
    if (rec.ok && prev_time >= 0 && rec.total_time() < prev_time) rep.time_trend_ok = false;
    if (rec.ok) prev_time = rec.total_time();
    rep.runs.push_back(rec);
    rep.sweep.push_back({r, rec});
  }
  rep.aggregates = aggregate(rep.runs);
  return rep;
}

Report cmd_montecarlo(const RunConfig& cfg) {
  cfg.validate();
  NetworkInstance inst = load_instance(resolve_instance_path(cfg.instance));
  Report rep;
  rep.command = "montecarlo";
  rep.config = cfg;
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < cfg.runs; ++k) {
    NetworkInstance pert = perturb_demands(inst, cfg.sigma, rng);
    RunRecord rec = solve_two_stage(pert, cfg);
    rec.run = k;
    rep.runs.push_back(std::move(rec));
  }
  rep.aggregates = aggregate(rep.runs);
  return rep;
}

Report cmd_oracle(const RunConfig& cfg) {
  cfg.validate();
  NetworkInstance inst = load_instance(resolve_instance_path(cfg.instance));
  Report rep;
  rep.command = "oracle";
  rep.config = cfg;
  BuildResult build = build_model(inst, PwaConfig{cfg.r, cfg.epsilon});
  OracleResult orc = enumerate_solve(build);
  RunRecord rec = solve_two_stage(inst, cfg);
  if (!rec.ok) throw Error("two-stage solve failed: " + rec.error);
  rep.runs.push_back(rec);
  rep.aggregates = aggregate(rep.runs);
  OracleSummary s;
  s.oracle_objective = orc.best_objective;
  s.num_configurations = orc.num_configurations;
  s.best_configuration = orc.best_configuration;
  for (const OracleEntry& e : orc.log) s.num_feasible += e.status == SolveStatus::kOptimal;
  s.two_stage_objective = rec.objective;
  s.certificate = rec.certificate;
  s.gap = (rec.objective - orc.best_objective) / std::max(1.0, std::abs(orc.best_objective));
  rep.oracle = s;
  return rep;
}

int exit_code(const Report& report) {
  if (report.command != "solve") return 0;
  if (report.runs.empty() || !report.runs.front().ok) return 1;
  return report.runs.front().certificate == Certificate::kOptimal ? 0 : 2;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  nlohmann::json c;
  c["instance"] = config.instance;
  c["r"] = config.r;
  c["epsilon"] = config.epsilon;
  c["cert_tol"] = config.cert_tol;
  c["mode"] = to_string(config.mode);
  c["seed"] = config.seed;
  c["runs"] = config.runs;
  c["sigma"] = config.sigma;
  c["r_list"] = config.r_list;
  c["perturbation"] = "independent uniform multiplicative factor in [1-sigma, 1+sigma]";
  c["sign_convention"] = kSignConvention;
  c["stage1"] = {{"feas_tol", config.stage1.feas_tol},
                 {"opt_tol", config.stage1.opt_tol},
                 {"max_iter", config.stage1.max_iter}};
  c["consensus"] = {{"rho", config.consensus.rho},
                    {"max_outer", config.consensus.max_outer},
                    {"primal_tol", config.consensus.primal_tol},
                    {"dual_tol", config.consensus.dual_tol},
                    {"balance_factor", config.consensus.balance_factor},
                    {"over_relaxation", config.consensus.over_relaxation}};
  j["config"] = c;
  nlohmann::json runs_json = nlohmann::json::array();
  for (const RunRecord& r : runs) runs_json.push_back(record_json(r));
  j["runs"] = runs_json;
  j["aggregates"] = {{"num_runs", aggregates.num_runs},
                     {"num_ok", aggregates.num_ok},
                     {"num_optimal", aggregates.num_optimal},
                     {"fraction_optimal", aggregates.fraction_optimal},
                     {"average_deviation", aggregates.average_deviation},
                     {"average_time_s", aggregates.average_time}};
  if (!sweep.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : sweep) {
      rows.push_back({{"r", row.r}, {"mean_abs_dev", row.record.mean_abs_dev},
                      {"max_abs_dev", row.record.max_abs_dev}, {"j_psi", row.record.j_psi},
                      {"objective", row.record.objective},
                      {"time_s", row.record.total_time()}});
    }
    j["sweep"] = rows;
    j["time_trend_ok"] = time_trend_ok;
  }
  if (oracle) {
    j["oracle"] = {{"oracle_objective", oracle->oracle_objective},
                   {"two_stage_objective", oracle->two_stage_objective},
                   {"certificate", to_string(oracle->certificate)},
                   {"num_configurations", oracle->num_configurations},
                   {"num_feasible", oracle->num_feasible},
                   {"best_configuration", oracle->best_configuration},
                   {"gap", oracle->gap}};
  }
  return j;
}

std::string Report::sweep_csv() const {
  std::string out = "r,mean_abs_dev,max_abs_dev,j_psi,objective,time_s\n";
  for (const SweepRow& row : sweep) {
    out += std::to_string(row.r) + "," + format_double(row.record.mean_abs_dev) + "," +
           format_double(row.record.max_abs_dev) + "," + format_double(row.record.j_psi) +
           "," + format_double(row.record.objective) + "," +
           format_double(row.record.total_time()) + "\n";
  }
  return out;
}

}  // namespace ogpf
