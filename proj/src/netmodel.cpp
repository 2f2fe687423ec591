#include "ogpf/netmodel.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "ogpf/errors.hpp"

namespace ogpf {
namespace {

using nlohmann::json;

void fail(const std::string& invariant, const std::string& entity) {
  throw ValidationError(invariant + " (" + entity + ")");
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ParseError(where + ": unknown field '" + key + "'");
    }
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  if (!it->is_number()) {
    throw ParseError(where + ": field '" + key + "' is not a number");
  }
  double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(where + ": field '" + key + "' is not finite");
  }
  return v;
}

std::optional<double> opt_number(const json& obj, const char* key,
                                 const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj, key, where);
}

std::string text(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError(where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

int integer(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw ParseError(where + ": missing integer field '" + key + "'");
  }
  return it->get<int>();
}

const json& array(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    throw ParseError(std::string("missing array '") + key + "'");
  }
  return *it;
}

// Number of connected components over `n` vertices.
int components(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int count = n;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --count;
    }
  }
  return count;
}

}  // namespace

int NetworkInstance::bus_index(std::string_view id) const {
  auto it = bus_pos.find(std::string(id));
  return it == bus_pos.end() ? -1 : it->second;
}

int NetworkInstance::node_index(std::string_view id) const {
  auto it = node_pos.find(std::string(id));
  return it == node_pos.end() ? -1 : it->second;
}

bool NetworkInstance::is_tie_pipe(int pipe) const {
  return gas_nodes[pipe_from(pipe)].area != gas_nodes[pipe_to(pipe)].area;
}

bool NetworkInstance::is_tie_line(int line) const {
  return buses[bus_index(lines[line].from)].area !=
         buses[bus_index(lines[line].to)].area;
}

void validate(NetworkInstance& inst) {
  const int m = inst.num_areas;
  if (m < 1) fail("num_areas must be at least 1", "num_areas");

  inst.bus_pos.clear();
  inst.node_pos.clear();
  for (int i = 0; i < static_cast<int>(inst.buses.size()); ++i) {
    const Bus& b = inst.buses[i];
    if (!inst.bus_pos.emplace(b.id, i).second) fail("duplicate bus id", b.id);
    if (b.area < 1 || b.area > m) fail("bus area out of range 1..m", b.id);
    if (b.demand_e < 0) fail("demand_e must be nonnegative", b.id);
    if (!(b.theta_min < b.theta_max)) fail("theta_min < theta_max", b.id);
  }
  for (int i = 0; i < static_cast<int>(inst.gas_nodes.size()); ++i) {
    const GasNode& g = inst.gas_nodes[i];
    if (!inst.node_pos.emplace(g.id, i).second) {
      fail("duplicate gas node id", g.id);
    }
    if (g.area < 1 || g.area > m) fail("gas node area out of range 1..m", g.id);
    if (g.demand_g < 0) fail("demand_g must be nonnegative", g.id);
    if (!(g.psi_min < g.psi_max)) fail("psi_min < psi_max", g.id);
  }

  std::vector<int> buses_per_area(m + 1, 0), nodes_per_area(m + 1, 0);
  for (const Bus& b : inst.buses) ++buses_per_area[b.area];
  for (const GasNode& g : inst.gas_nodes) ++nodes_per_area[g.area];
  for (int a = 1; a <= m; ++a) {
    if (buses_per_area[a] == 0) {
      fail("every area needs at least one bus", "area " + std::to_string(a));
    }
    if (nodes_per_area[a] <= 1) {
      fail("area gas subgraph size must exceed 1", "area " + std::to_string(a));
    }
  }

  std::vector<std::pair<int, int>> edges;
  for (const PowerLine& l : inst.lines) {
    std::string name = l.from + "-" + l.to;
    int a = inst.bus_index(l.from), b = inst.bus_index(l.to);
    if (a < 0 || b < 0) fail("line references unknown bus", name);
    if (a == b) fail("line endpoints must differ", name);
    if (!(l.reactance > 0)) fail("reactance must be positive", name);
    edges.emplace_back(a, b);
  }
  if (components(static_cast<int>(inst.buses.size()), edges) != 1) {
    fail("electrical graph must be connected", "lines");
  }

  edges.clear();
  for (const Pipeline& p : inst.pipelines) {
    std::string name = p.from + "-" + p.to;
    int a = inst.node_index(p.from), b = inst.node_index(p.to);
    if (a < 0 || b < 0) fail("pipeline references unknown gas node", name);
    if (a == b) fail("pipeline endpoints must differ", name);
    if (!(p.flow_cap > 0)) fail("flow_cap must be positive", name);
    bool internal = inst.gas_nodes[a].area == inst.gas_nodes[b].area;
    if (internal && !(p.weymouth_c && *p.weymouth_c > 0)) {
      fail("internal pipe needs weymouth_c > 0", name);
    }
    if (!internal && p.weymouth_c) {
      fail("tie pipe must not carry weymouth_c", name);
    }
    edges.emplace_back(a, b);
  }
  if (components(static_cast<int>(inst.gas_nodes.size()), edges) != 1) {
    fail("gas graph must be connected", "pipelines");
  }

  std::set<std::string> ids;
  for (const Generator& g : inst.generators) {
    if (!ids.insert(g.id).second) fail("duplicate generator id", g.id);
    if (inst.bus_index(g.bus) < 0) fail("generator references unknown bus", g.id);
    if (!(g.p_min < g.p_max)) fail("p_min < p_max", g.id);
    if (g.gas_fueled()) {
      if (!g.conversion || g.cost) {
        fail("gas-fueled unit needs eta coefficients and no cost", g.id);
      }
      if (!(g.conversion->c2 > 0)) fail("eta2 must be positive", g.id);
      if (!g.gas_node || inst.node_index(*g.gas_node) < 0) {
        fail("gas-fueled unit must reference an existing gas node", g.id);
      }
      if (inst.gas_nodes[inst.node_index(*g.gas_node)].area !=
          inst.buses[inst.bus_index(g.bus)].area) {
        fail("gas-fueled unit must draw gas inside its own area", g.id);
      }
    } else {
      if (!g.cost || g.conversion || g.gas_node) {
        fail("non-gas-fueled unit needs cost coefficients only", g.id);
      }
      if (!(g.cost->c2 > 0)) fail("cost_c2 must be positive", g.id);
    }
  }
  ids.clear();
  for (const GasSource& s : inst.gas_sources) {
    if (!ids.insert(s.id).second) fail("duplicate gas source id", s.id);
    if (inst.node_index(s.node) < 0) {
      fail("gas source references unknown gas node", s.id);
    }
    if (!(s.g_min < s.g_max)) fail("g_min < g_max", s.id);
    if (s.cost_c1 < 0 || s.cost_c0 < 0) {
      fail("gas source costs must be nonnegative", s.id);
    }
  }
}

NetworkInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  check_keys(doc,
             {"num_areas", "buses", "lines", "generators", "gas_nodes",
              "pipelines", "gas_sources"},
             "instance");
  NetworkInstance inst;
  inst.num_areas = integer(doc, "num_areas", "instance");

  for (const json& e : array(doc, "buses")) {
    check_keys(e, {"id", "area", "demand_e", "theta_min", "theta_max"}, "bus");
    Bus b;
    b.id = text(e, "id", "bus");
    std::string w = "bus " + b.id;
    b.area = integer(e, "area", w);
    b.demand_e = number(e, "demand_e", w);
    b.theta_min = number(e, "theta_min", w);
    b.theta_max = number(e, "theta_max", w);
    inst.buses.push_back(std::move(b));
  }
  for (const json& e : array(doc, "lines")) {
    check_keys(e, {"from", "to", "reactance"}, "line");
    PowerLine l;
    l.from = text(e, "from", "line");
    l.to = text(e, "to", "line");
    l.reactance = number(e, "reactance", "line " + l.from + "-" + l.to);
    inst.lines.push_back(std::move(l));
  }
  for (const json& e : array(doc, "generators")) {
    check_keys(e,
               {"id", "bus", "kind", "p_min", "p_max", "cost_c2", "cost_c1",
                "cost_c0", "eta2", "eta1", "eta0", "gas_node"},
               "generator");
    Generator g;
    g.id = text(e, "id", "generator");
    std::string w = "generator " + g.id;
    g.bus = text(e, "bus", w);
    std::string kind = text(e, "kind", w);
    if (kind == "gas_fueled") {
      g.kind = GeneratorKind::kGasFueled;
    } else if (kind == "non_gas_fueled") {
      g.kind = GeneratorKind::kNonGasFueled;
    } else {
      throw ParseError(w + ": unknown kind '" + kind + "'");
    }
    g.p_min = number(e, "p_min", w);
    g.p_max = number(e, "p_max", w);
    if (e.contains("cost_c2") || e.contains("cost_c1") || e.contains("cost_c0")) {
      g.cost = QuadraticCoeffs{number(e, "cost_c2", w), number(e, "cost_c1", w),
                               number(e, "cost_c0", w)};
    }
    if (e.contains("eta2") || e.contains("eta1") || e.contains("eta0")) {
      g.conversion = QuadraticCoeffs{number(e, "eta2", w), number(e, "eta1", w),
                                     number(e, "eta0", w)};
    }
    if (e.contains("gas_node")) g.gas_node = text(e, "gas_node", w);
    inst.generators.push_back(std::move(g));
  }
  for (const json& e : array(doc, "gas_nodes")) {
    check_keys(e, {"id", "area", "demand_g", "psi_min", "psi_max"}, "gas node");
    GasNode n;
    n.id = text(e, "id", "gas node");
    std::string w = "gas node " + n.id;
    n.area = integer(e, "area", w);
    n.demand_g = number(e, "demand_g", w);
    n.psi_min = number(e, "psi_min", w);
    n.psi_max = number(e, "psi_max", w);
    inst.gas_nodes.push_back(std::move(n));
  }
  for (const json& e : array(doc, "pipelines")) {
    check_keys(e, {"from", "to", "weymouth_c", "flow_cap"}, "pipeline");
    Pipeline p;
    p.from = text(e, "from", "pipeline");
    p.to = text(e, "to", "pipeline");
    std::string w = "pipeline " + p.from + "-" + p.to;
    p.weymouth_c = opt_number(e, "weymouth_c", w);
    p.flow_cap = number(e, "flow_cap", w);
    inst.pipelines.push_back(std::move(p));
  }
  for (const json& e : array(doc, "gas_sources")) {
    check_keys(e, {"id", "node", "g_min", "g_max", "cost_c1", "cost_c0"},
               "gas source");
    GasSource s;
    s.id = text(e, "id", "gas source");
    std::string w = "gas source " + s.id;
    s.node = text(e, "node", w);
    s.g_min = number(e, "g_min", w);
    s.g_max = number(e, "g_max", w);
    s.cost_c1 = number(e, "cost_c1", w);
    s.cost_c0 = number(e, "cost_c0", w);
    inst.gas_sources.push_back(std::move(s));
  }
  validate(inst);
  return inst;
}

json instance_to_json(const NetworkInstance& inst) {
  json doc;
  doc["num_areas"] = inst.num_areas;
  doc["buses"] = json::array();
  for (const Bus& b : inst.buses) {
    doc["buses"].push_back({{"id", b.id},
                            {"area", b.area},
                            {"demand_e", b.demand_e},
                            {"theta_min", b.theta_min},
                            {"theta_max", b.theta_max}});
  }
  doc["lines"] = json::array();
  for (const PowerLine& l : inst.lines) {
    doc["lines"].push_back(
        {{"from", l.from}, {"to", l.to}, {"reactance", l.reactance}});
  }
  doc["generators"] = json::array();
  for (const Generator& g : inst.generators) {
    json e = {{"id", g.id},
              {"bus", g.bus},
              {"kind", g.gas_fueled() ? "gas_fueled" : "non_gas_fueled"},
              {"p_min", g.p_min},
              {"p_max", g.p_max}};
    if (g.cost) {
      e["cost_c2"] = g.cost->c2;
      e["cost_c1"] = g.cost->c1;
      e["cost_c0"] = g.cost->c0;
    }
    if (g.conversion) {
      e["eta2"] = g.conversion->c2;
      e["eta1"] = g.conversion->c1;
      e["eta0"] = g.conversion->c0;
    }
    if (g.gas_node) e["gas_node"] = *g.gas_node;
    doc["generators"].push_back(std::move(e));
  }
  doc["gas_nodes"] = json::array();
  for (const GasNode& n : inst.gas_nodes) {
    doc["gas_nodes"].push_back({{"id", n.id},
                                {"area", n.area},
                                {"demand_g", n.demand_g},
                                {"psi_min", n.psi_min},
                                {"psi_max", n.psi_max}});
  }
  doc["pipelines"] = json::array();
  for (const Pipeline& p : inst.pipelines) {
    json e = {{"from", p.from}, {"to", p.to}, {"flow_cap", p.flow_cap}};
    if (p.weymouth_c) e["weymouth_c"] = *p.weymouth_c;
    doc["pipelines"].push_back(std::move(e));
  }
  doc["gas_sources"] = json::array();
  for (const GasSource& s : inst.gas_sources) {
    doc["gas_sources"].push_back({{"id", s.id},
                                  {"node", s.node},
                                  {"g_min", s.g_min},
                                  {"g_max", s.g_max},
                                  {"cost_c1", s.cost_c1},
                                  {"cost_c0", s.cost_c0}});
  }
  return doc;
}

NetworkInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ParseError("malformed instance file '" + path + "': " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const NetworkInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file '" + path + "'");
  out << instance_to_json(inst).dump(2) << "\n";
}

EdgeClassification classify_edges(const NetworkInstance& inst) {
  EdgeClassification out;
  for (int l = 0; l < static_cast<int>(inst.lines.size()); ++l) {
    if (inst.is_tie_line(l)) out.tie_lines.push_back(l);
  }
  for (int p = 0; p < static_cast<int>(inst.pipelines.size()); ++p) {
    int i = inst.pipe_from(p), j = inst.pipe_to(p);
    auto& directed = inst.is_tie_pipe(p) ? out.tie_directed : out.internal_directed;
    (inst.is_tie_pipe(p) ? out.tie_pipes : out.internal_pipes).push_back(p);
    directed.push_back({p, i, j, true});
    directed.push_back({p, j, i, false});
  }
  return out;
}

std::string directed_name(const NetworkInstance& inst, const DirectedPipe& d) {
  return inst.gas_nodes[d.from].id + "->" + inst.gas_nodes[d.to].id;
}

}  // namespace ogpf
