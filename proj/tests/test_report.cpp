#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ogpf/errors.hpp"
#include "ogpf/report.hpp"

using namespace ogpf;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

Run cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(OGPF_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& file) {
  fs::path dir = fs::temp_directory_path() / "ogpf_test_report";
  fs::create_directories(dir);
  return dir / file;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunConfig config(const std::string& instance) {
  RunConfig c;
  c.instance = instance;
  return c;
}

}  // namespace

TEST_CASE("solve exit codes follow the certificate") {
  Run ok = cli("solve --instance small2area --r 4");
  CHECK(ok.code == 0);
  CHECK(ok.output.find("\"certificate\": \"Optimal\"") != std::string::npos);
  Run approx = cli("solve --instance mesh2area --r 4");
  CHECK(approx.code == 2);
  CHECK(approx.output.find("\"certificate\": \"Approximate\"") != std::string::npos);
}

TEST_CASE("error paths exit with 1") {
  CHECK(cli("solve --instance small2area --r 3").code == 1);
  CHECK(cli("solve --instance small2area --epsilon 0").code == 1);
  CHECK(cli("solve --instance small2area --mode gossip").code == 1);
  CHECK(cli("solve --instance no_such_instance").code == 1);
  CHECK(cli("solve").code == 1);
  CHECK(cli("montecarlo --instance small2area --runs 0").code == 1);
  CHECK(cli("montecarlo --instance small2area --sigma 1.5").code == 1);

  fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(cli("solve --instance " + bad.string()).code == 1);

  fs::path invalid = scratch("invalid.json");
  std::ifstream src(std::string(OGPF_DATA_DIR) + "/radial1.json");
  nlohmann::json doc = nlohmann::json::parse(src);
  doc["lines"][0]["reactance"] = -1.0;
  std::ofstream(invalid) << doc.dump();
  Run r = cli("solve --instance " + invalid.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("reactance") != std::string::npos);
}

TEST_CASE("model dump is written on request") {
  fs::path dump = scratch("model.txt");
  fs::remove(dump);
  CHECK(cli("solve --instance radial1 --r 2 --dump-model " + dump.string() + " --out " +
            scratch("dump_report.json").string())
            .code == 0);
  const std::string text = slurp(dump);
  CHECK(text.rfind("ogpf-model 1\n", 0) == 0);
}

TEST_CASE("Monte Carlo output is reproducible byte for byte") {
  fs::path a = scratch("mc_a.json"), b = scratch("mc_b.json");
  const std::string args = "montecarlo --instance small2area --seed 7 --runs 3 --no-timings --out ";
  REQUIRE(cli(args + a.string()).code == 0);
  REQUIRE(cli(args + b.string()).code == 0);
  const std::string ja = slurp(a);
  CHECK(!ja.empty());
  CHECK(ja == slurp(b));
  nlohmann::json j = nlohmann::json::parse(ja);
  CHECK(j["runs"].size() == 3);
  const double f = j["aggregates"]["fraction_optimal"];
  CHECK(f >= 0.0);
  CHECK(f <= 1.0);
}

TEST_CASE("zero spread reproduces the nominal run") {
  RunConfig c = config("small2area");
  c.sigma = 0.0;
  c.runs = 3;
  c.timings = false;
  Report mc = cmd_montecarlo(c);
  Report nominal = cmd_solve(c);
  REQUIRE(mc.runs.size() == 3);
  for (const RunRecord& r : mc.runs) {
    CHECK(r.ok);
    CHECK(r.objective == nominal.runs[0].objective);
    CHECK(r.relaxed_objective == nominal.runs[0].relaxed_objective);
    CHECK(r.j_psi == nominal.runs[0].j_psi);
    CHECK(r.deviations == nominal.runs[0].deviations);
  }
}

TEST_CASE("perturbation stays within the spread") {
  NetworkInstance inst = load_instance(resolve_instance_path("medium3area"));
  std::mt19937_64 rng(3);
  NetworkInstance p = perturb_demands(inst, 0.1, rng);
  for (std::size_t b = 0; b < inst.buses.size(); ++b) {
    CHECK(p.buses[b].demand_e >= 0.9 * inst.buses[b].demand_e - 1e-15);
    CHECK(p.buses[b].demand_e <= 1.1 * inst.buses[b].demand_e + 1e-15);
  }
  for (std::size_t n = 0; n < inst.gas_nodes.size(); ++n) {
    CHECK(p.gas_nodes[n].demand_g >= 0.9 * inst.gas_nodes[n].demand_g - 1e-15);
    CHECK(p.gas_nodes[n].demand_g <= 1.1 * inst.gas_nodes[n].demand_g + 1e-15);
  }
}

TEST_CASE("aggregates match a recomputation from the run rows") {
  RunConfig c = config("mesh2area");
  c.runs = 6;
  c.seed = 11;
  Report rep = cmd_montecarlo(c);
  int ok = 0, optimal = 0;
  double dev = 0.0, time = 0.0;
  for (const RunRecord& r : rep.runs) {
    if (!r.ok) continue;
    ++ok;
    time += r.stage1_time + r.stage2_time;
    if (r.certificate == Certificate::kOptimal) {
      ++optimal;
      dev += r.mean_abs_dev;
    }
  }
  CHECK(rep.aggregates.num_runs == 6);
  CHECK(rep.aggregates.num_ok == ok);
  CHECK(rep.aggregates.num_optimal == optimal);
  CHECK(rep.aggregates.fraction_optimal == static_cast<double>(optimal) / 6);
  CHECK(rep.aggregates.average_deviation == (optimal ? dev / optimal : 0.0));
  CHECK(rep.aggregates.average_time == (ok ? time / ok : 0.0));
}

TEST_CASE("finer grids reduce the deviation") {
  RunConfig c = config("small2area");
  c.r_list = {4, 16};
  Report rep = cmd_sweep_r(c);
  REQUIRE(rep.sweep.size() == 2);
  REQUIRE(rep.sweep[0].record.ok);
  REQUIRE(rep.sweep[1].record.ok);
  CHECK(rep.sweep[1].record.mean_abs_dev <= rep.sweep[0].record.mean_abs_dev);
}

TEST_CASE("single-r sweep is one CSV row") {
  RunConfig c = config("small2area");
  c.r_list = {4};
  std::string csv = cmd_sweep_r(c).sweep_csv();
  std::istringstream is(csv);
  std::string header, row, extra;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header == "r,mean_abs_dev,max_abs_dev,j_psi,objective,time_s");
  CHECK(row.rfind("4,", 0) == 0);
  CHECK_FALSE(std::getline(is, extra));

  fs::path out = scratch("sweep.csv");
  CHECK(cli("sweep-r --instance small2area --r-list 4 --csv " + out.string() + " --out " +
            scratch("sweep.json").string())
            .code == 0);
  CHECK(slurp(out).rfind("r,mean_abs_dev", 0) == 0);
}

TEST_CASE("oracle gap") {
  RunConfig c = config("small2area");
  c.r = 2;
  Report rep = cmd_oracle(c);
  REQUIRE(rep.oracle.has_value());
  CHECK(rep.oracle->num_configurations == 8);
  CHECK(rep.oracle->gap >= -1e-6);
  if (rep.oracle->certificate == Certificate::kOptimal) CHECK(std::abs(rep.oracle->gap) <= 1e-6);
  CHECK(exit_code(rep) == 0);
}

TEST_CASE("oracle cap overflow names the required count") {
  Run r = cli("oracle --instance medium3area --r 18");
  CHECK(r.code == 1);
  CHECK(r.output.find("required 104976") != std::string::npos);
}

TEST_CASE("consensus solve matches the centralized solve") {
  RunConfig c = config("small2area");
  Report central = cmd_solve(c);
  c.mode = SolverMode::kConsensus;
  Report cons = cmd_solve(c);
  REQUIRE(central.runs[0].ok);
  REQUIRE(cons.runs[0].ok);
  CHECK(std::abs(cons.runs[0].objective - central.runs[0].objective) <=
        1e-4 * std::abs(central.runs[0].objective));
  CHECK(cons.runs[0].outer_iterations <= 500);
}

TEST_CASE("report echoes its configuration") {
  RunConfig c = config("radial1");
  c.r = 6;
  nlohmann::json j = cmd_solve(c).to_json();
  CHECK(j["command"] == "solve");
  CHECK(j["config"]["r"] == 6);
  CHECK(j["config"]["mode"] == "centralized");
  CHECK(j["config"].contains("sign_convention"));
  CHECK(j["runs"][0]["deviations"].size() == 3);
}

TEST_CASE("mode names") {
  CHECK(parse_mode("consensus") == SolverMode::kConsensus);
  CHECK(to_string(parse_mode("centralized")) == "centralized");
  CHECK_THROWS_AS(parse_mode("x"), ConfigError);
}
