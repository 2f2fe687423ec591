#ifndef OGPF_NETMODEL_HPP
#define OGPF_NETMODEL_HPP

// Domain model of a multi-area integrated electrical and gas system.
//
// Pressures are carried as squared pressures (psi) throughout, so the
// Weymouth relation reads phi = sgn(psi_i - psi_j) * c * sqrt(|psi_i - psi_j|)
// with no unit conversion. Units of psi, c and flows are arbitrary but must
// be mutually consistent.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace ogpf {

struct Bus {
  std::string id;
  int area = 1;
  double demand_e = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
};

struct PowerLine {
  std::string from;
  std::string to;
  double reactance = 0.0;
};

enum class GeneratorKind { kGasFueled, kNonGasFueled };

struct QuadraticCoeffs {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  bool operator==(const QuadraticCoeffs&) const = default;
};

struct Generator {
  std::string id;
  std::string bus;
  GeneratorKind kind = GeneratorKind::kNonGasFueled;
  double p_min = 0.0;
  double p_max = 0.0;
  // Production cost; populated iff non-gas-fueled.
  std::optional<QuadraticCoeffs> cost;
  // Gas consumption eta2*p^2 + eta1*p + eta0; populated iff gas-fueled.
  std::optional<QuadraticCoeffs> conversion;
  std::optional<std::string> gas_node;

  bool gas_fueled() const { return kind == GeneratorKind::kGasFueled; }
};

struct GasNode {
  std::string id;
  int area = 1;
  double demand_g = 0.0;
  double psi_min = 0.0;
  double psi_max = 0.0;
};

// Undirected physical pipe. Internal pipes carry a Weymouth constant, tie
// pipes do not.
struct Pipeline {
  std::string from;
  std::string to;
  std::optional<double> weymouth_c;
  double flow_cap = 0.0;
};

struct GasSource {
  std::string id;
  std::string node;
  double g_min = 0.0;
  double g_max = 0.0;
  double cost_c1 = 0.0;
  double cost_c0 = 0.0;
};

// Immutable once returned by validate()/load_instance().
struct NetworkInstance {
  int num_areas = 1;
  std::vector<Bus> buses;
  std::vector<PowerLine> lines;
  std::vector<Generator> generators;
  std::vector<GasNode> gas_nodes;
  std::vector<Pipeline> pipelines;
  std::vector<GasSource> gas_sources;

  // Lookup tables filled by validate().
  std::unordered_map<std::string, int> bus_pos;
  std::unordered_map<std::string, int> node_pos;

  int bus_index(std::string_view id) const;
  int node_index(std::string_view id) const;
  int pipe_from(int pipe) const { return node_index(pipelines[pipe].from); }
  int pipe_to(int pipe) const { return node_index(pipelines[pipe].to); }
  bool is_tie_pipe(int pipe) const;
  bool is_tie_line(int line) const;
};

// Checks every structural invariant and builds the lookup tables. Throws
// ValidationError naming the violated invariant and the entity.
void validate(NetworkInstance& inst);

NetworkInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const NetworkInstance& inst);

NetworkInstance load_instance(const std::string& path);
void save_instance(const NetworkInstance& inst, const std::string& path);

// One orientation of a pipe. Orientations of the same pipe are stored next
// to each other: index 2k is from->to, 2k+1 is to->from.
struct DirectedPipe {
  int pipe = -1;
  int from = -1;  // gas node index
  int to = -1;
  bool forward = true;
};

struct EdgeClassification {
  std::vector<int> tie_lines;
  std::vector<int> tie_pipes;
  std::vector<int> internal_pipes;
  std::vector<DirectedPipe> tie_directed;
  std::vector<DirectedPipe> internal_directed;
};

EdgeClassification classify_edges(const NetworkInstance& inst);

std::string directed_name(const NetworkInstance& inst, const DirectedPipe& d);

}  // namespace ogpf

#endif  // OGPF_NETMODEL_HPP
