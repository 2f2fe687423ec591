#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "doctest.h"
#include "ogpf/errors.hpp"
#include "ogpf/netmodel.hpp"

using namespace ogpf;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) {
  return std::string(OGPF_DATA_DIR) + "/" + name + ".json";
}

nlohmann::json raw(const std::string& name) {
  std::ifstream in(data(name));
  return nlohmann::json::parse(in);
}

fs::path scratch(const std::string& file) {
  fs::path dir = fs::temp_directory_path() / "ogpf_test_netmodel";
  fs::create_directories(dir);
  return dir / file;
}

}  // namespace

TEST_CASE("bundled two-area instance loads with the expected sizes") {
  NetworkInstance inst = load_instance(data("small2area"));
  CHECK(inst.num_areas == 2);
  CHECK(inst.buses.size() == 4);
  CHECK(inst.gas_nodes.size() == 5);
  CHECK(inst.pipelines.size() == 4);
  EdgeClassification e = classify_edges(inst);
  CHECK(e.tie_pipes.size() == 1);
  CHECK(e.internal_pipes.size() == 3);
  CHECK(e.internal_directed.size() == 6);
}

TEST_CASE("every bundled instance validates") {
  for (const char* name : {"small2area", "radial1", "mesh2area", "medium3area"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_instance(data(name)));
  }
}

TEST_CASE("gas area of size one reports the size invariant") {
  nlohmann::json doc = raw("radial1");
  doc["num_areas"] = 2;
  doc["buses"][2]["area"] = 2;
  // m3 alone in area 2; its pipe to m0 becomes a tie pipe.
  doc["gas_nodes"][3]["area"] = 2;
  doc["pipelines"][2].erase("weymouth_c");
  CHECK_THROWS_WITH_AS(instance_from_json(doc),
                       doctest::Contains("area gas subgraph size must exceed 1"),
                       ValidationError);
}

TEST_CASE("empty file is a parse error") {
  fs::path p = scratch("empty.json");
  std::ofstream(p).close();
  CHECK_THROWS_AS(load_instance(p.string()), ParseError);
}

TEST_CASE("unknown and missing fields are parse errors") {
  nlohmann::json doc = raw("radial1");
  doc["buses"][0]["voltage"] = 1.0;
  CHECK_THROWS_AS(instance_from_json(doc), ParseError);
  doc = raw("radial1");
  doc["gas_nodes"][0].erase("psi_max");
  CHECK_THROWS_AS(instance_from_json(doc), ParseError);
}

TEST_CASE("structural violations name the offending entity") {
  nlohmann::json doc = raw("radial1");
  doc["buses"][1]["id"] = "c1";
  CHECK_THROWS_WITH_AS(instance_from_json(doc), doctest::Contains("c1"), ValidationError);
  doc = raw("radial1");
  doc["lines"][0]["reactance"] = 0.0;
  CHECK_THROWS_WITH_AS(instance_from_json(doc), doctest::Contains("reactance"),
                       ValidationError);
  doc = raw("radial1");
  doc["generators"][1]["gas_node"] = "nowhere";
  CHECK_THROWS_WITH_AS(instance_from_json(doc), doctest::Contains("U2"), ValidationError);
}

TEST_CASE("single-area instance has no tie edges") {
  EdgeClassification e = classify_edges(load_instance(data("radial1")));
  CHECK(e.tie_lines.empty());
  CHECK(e.tie_pipes.empty());
  CHECK(e.tie_directed.empty());
  CHECK(e.internal_pipes.size() == 3);
}

TEST_CASE("a pipe across areas is a tie pipe") {
  NetworkInstance inst = load_instance(data("small2area"));
  EdgeClassification e = classify_edges(inst);
  for (int p : e.tie_pipes) {
    const int a = inst.gas_nodes[inst.pipe_from(p)].area;
    const int b = inst.gas_nodes[inst.pipe_to(p)].area;
    CHECK(a != b);
    CHECK(inst.is_tie_pipe(p));
  }
  for (int p : e.internal_pipes) CHECK_FALSE(inst.is_tie_pipe(p));
}

TEST_CASE("classification partitions pipes and closes orientations") {
  for (const char* name : {"small2area", "radial1", "mesh2area", "medium3area"}) {
    CAPTURE(name);
    NetworkInstance inst = load_instance(data(name));
    EdgeClassification e = classify_edges(inst);
    std::set<int> all(e.tie_pipes.begin(), e.tie_pipes.end());
    for (int p : e.internal_pipes) CHECK(all.insert(p).second);
    CHECK(all.size() == inst.pipelines.size());
    REQUIRE(e.internal_directed.size() == 2 * e.internal_pipes.size());
    for (std::size_t k = 0; k < e.internal_directed.size(); k += 2) {
      const DirectedPipe& f = e.internal_directed[k];
      const DirectedPipe& b = e.internal_directed[k + 1];
      CHECK(f.pipe == b.pipe);
      CHECK(f.from == b.to);
      CHECK(f.to == b.from);
      CHECK(f.forward);
      CHECK_FALSE(b.forward);
    }
    for (std::size_t k = 0; k < e.tie_lines.size(); ++k) CHECK(inst.is_tie_line(e.tie_lines[k]));
  }
}

TEST_CASE("save then load is the identity") {
  for (const char* name : {"small2area", "medium3area"}) {
    NetworkInstance a = load_instance(data(name));
    fs::path p = scratch(std::string(name) + "_copy.json");
    save_instance(a, p.string());
    NetworkInstance b = load_instance(p.string());
    CHECK(instance_to_json(a) == instance_to_json(b));
    REQUIRE(a.generators.size() == b.generators.size());
    for (std::size_t g = 0; g < a.generators.size(); ++g) {
      CHECK(a.generators[g].cost == b.generators[g].cost);
      CHECK(a.generators[g].conversion == b.generators[g].conversion);
      CHECK(a.generators[g].gas_node == b.generators[g].gas_node);
    }
    for (std::size_t k = 0; k < a.pipelines.size(); ++k) {
      CHECK(a.pipelines[k].weymouth_c == b.pipelines[k].weymouth_c);
      CHECK(a.pipelines[k].flow_cap == b.pipelines[k].flow_cap);
    }
  }
}
