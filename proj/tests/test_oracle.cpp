#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "ogpf/errors.hpp"
#include "ogpf/feascheck.hpp"
#include "ogpf/oracle.hpp"

using namespace ogpf;

namespace {

std::string data(const std::string& name) {
  return std::string(OGPF_DATA_DIR) + "/" + name + ".json";
}

nlohmann::json raw(const std::string& name) {
  std::ifstream in(data(name));
  return nlohmann::json::parse(in);
}

// Two buses, two gas nodes and one pipe.
NetworkInstance one_pipe() {
  nlohmann::json doc = {
      {"num_areas", 1},
      {"buses",
       {{{"id", "b1"}, {"area", 1}, {"demand_e", 0.5}, {"theta_min", -1}, {"theta_max", 1}},
        {{"id", "b2"}, {"area", 1}, {"demand_e", 0.4}, {"theta_min", -1}, {"theta_max", 1}}}},
      {"lines", {{{"from", "b1"}, {"to", "b2"}, {"reactance", 0.1}}}},
      {"generators",
       {{{"id", "G"}, {"bus", "b1"}, {"kind", "non_gas_fueled"}, {"p_min", 0}, {"p_max", 2},
         {"cost_c2", 1.0}, {"cost_c1", 2.0}, {"cost_c0", 0.0}},
        {{"id", "H"}, {"bus", "b2"}, {"kind", "gas_fueled"}, {"p_min", 0}, {"p_max", 2},
         {"eta2", 0.2}, {"eta1", 1.0}, {"eta0", 0.0}, {"gas_node", "g2"}}}},
      {"gas_nodes",
       {{{"id", "g1"}, {"area", 1}, {"demand_g", 0.1}, {"psi_min", 1}, {"psi_max", 9}},
        {{"id", "g2"}, {"area", 1}, {"demand_g", 0.2}, {"psi_min", 1}, {"psi_max", 9}}}},
      {"pipelines", {{{"from", "g1"}, {"to", "g2"}, {"weymouth_c", 1.0}, {"flow_cap", 2.0}}}},
      {"gas_sources",
       {{{"id", "S"}, {"node", "g1"}, {"g_min", 0}, {"g_max", 3}, {"cost_c1", 1.0},
         {"cost_c0", 0.0}}}}};
  return instance_from_json(doc);
}

}  // namespace

TEST_CASE("configuration count") {
  CHECK(configuration_count(1, 2) == 2);
  CHECK(configuration_count(3, 2) == 8);
  CHECK(configuration_count(3, 4) == 64);
  CHECK(configuration_count(0, 4) == 1);
  CHECK(configuration_count(200, 16) == std::numeric_limits<std::int64_t>::max());
}

TEST_CASE("one pipe at r = 2 has two configurations") {
  NetworkInstance inst = one_pipe();
  BuildResult b = build_model(inst, PwaConfig{2, 1e-6});
  OracleResult orc = enumerate_solve(b);
  CHECK(orc.num_configurations == 2);
  CHECK(orc.log.size() == 2);
  // Gas must flow from the only source towards g2.
  CHECK(orc.best_configuration == std::vector<int>{1});
  CHECK(check_feasibility(inst, b, orc.best_x).ok(1e-6));
}

TEST_CASE("two-area instance at r = 2") {
  NetworkInstance inst = load_instance(data("small2area"));
  BuildResult b = build_model(inst, PwaConfig{2, 1e-6});
  OracleResult orc = enumerate_solve(b);
  CHECK(orc.num_configurations == 8);
  CHECK(orc.log.size() == 8);
  double best = std::numeric_limits<double>::infinity();
  for (const OracleEntry& e : orc.log) {
    if (e.status == SolveStatus::kOptimal) best = std::min(best, e.objective);
  }
  CHECK(orc.best_objective == best);
  Solution relaxed = solve_convex(relax(b.model));
  REQUIRE(relaxed.status == SolveStatus::kOptimal);
  CHECK(orc.best_objective >= relaxed.objective - 1e-8);
  CHECK(b.model.objective(orc.best_x) == doctest::Approx(orc.best_objective).epsilon(1e-9));
  CHECK(evaluate_violation(b.model, orc.best_x, true).max() <= 1e-6);
}

TEST_CASE("demand beyond every source is infeasible in every branch") {
  nlohmann::json doc = raw("small2area");
  for (auto& n : doc["gas_nodes"]) n["demand_g"] = 100.0;
  NetworkInstance inst = instance_from_json(doc);
  BuildResult b = build_model(inst, PwaConfig{2, 1e-6});
  CHECK_THROWS_AS(enumerate_solve(b), AllInfeasible);
}

TEST_CASE("enumeration order does not change the optimum") {
  NetworkInstance inst = load_instance(data("mesh2area"));
  BuildResult b = build_model(inst, PwaConfig{2, 1e-6});
  OracleResult natural = enumerate_solve(b);
  for (const std::vector<int>& order :
       {std::vector<int>{2, 0, 1, 3}, std::vector<int>{3, 2, 1, 0}}) {
    OracleResult perm = enumerate_solve(b, {}, order);
    CHECK(perm.best_objective == doctest::Approx(natural.best_objective).epsilon(1e-10));
    CHECK(perm.best_configuration == natural.best_configuration);
  }
  CHECK_THROWS_AS(enumerate_solve(b, {}, {0, 0, 1, 2}), ConfigError);
  CHECK_THROWS_AS(enumerate_solve(b, {}, {0, 1}), ConfigError);
}

TEST_CASE("cap violation reports the required count") {
  NetworkInstance inst = load_instance(data("small2area"));
  BuildResult b = build_model(inst, PwaConfig{4, 1e-6});
  OracleOptions o;
  o.cap = 10;
  try {
    enumerate_solve(b, o);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.required() == 64.0);
    CHECK(std::string(e.what()).find("64") != std::string::npos);
  }
}
