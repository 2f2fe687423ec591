#ifndef OGPF_MIPBUILD_HPP
#define OGPF_MIPBUILD_HPP

// Assembly of the mixed-integer gas-power flow model and its relaxation.

#include <map>
#include <string>
#include <vector>

#include "ogpf/model.hpp"
#include "ogpf/netmodel.hpp"
#include "ogpf/pwa.hpp"

namespace ogpf {

enum class VarKind {
  kPower,      // p^dg, owner = generator
  kGasUse,     // d^gu, owner = generator
  kAngle,      // theta, owner = bus
  kSupply,     // g^s, owner = gas source
  kTieFlow,    // phi on a tie orientation, owner = tie_directed index
  kFlow,       // phi on an internal orientation, owner = internal_directed index
  kPressure,   // psi, owner = gas node
  kAuxPsi,     // y^psi, owner = internal_directed index
  kAuxFlow,    // y^m, owner = internal_directed index, region m
  kDeltaPsi,   // delta^psi
  kAlpha,
  kBeta,
  kDelta,
};

struct VarKey {
  VarKind kind;
  int owner = 0;
  int region = -1;  // 0-based, only for per-region variables
  auto operator<=>(const VarKey&) const = default;
};

// Bijection between semantic variables and dense column indices.
class VarIndex {
 public:
  int add(VarKey key);
  int col(VarKind kind, int owner, int region = -1) const;
  const VarKey& key(int col) const { return keys_[col]; }
  int size() const { return static_cast<int>(keys_.size()); }
  bool is_pwa_column(int col) const;

 private:
  std::vector<VarKey> keys_;
  std::map<VarKey, int> pos_;
};

struct BuildResult {
  StandardModel model;
  VarIndex index;
  EdgeClassification edges;
  PwaConfig config;
  // One curve per entry of edges.internal_directed.
  std::vector<PwaCurve> curves;
  // Owning area (1-based) of every column and the home area of every row.
  // A row is hosted by the area of its bus/node or of the tie pipe's from
  // node.
  std::vector<int> column_area;
  std::vector<int> eq_area;
  std::vector<int> ineq_area;
  std::vector<int> quad_area;
};

// Full mixed-integer model (binaries integral).
BuildResult build_model(const NetworkInstance& inst, const PwaConfig& cfg);

// Same model with the integrality mask cleared; binaries keep their [0,1]
// box and the objective is untouched.
StandardModel relax(const StandardModel& model);

struct AreaView {
  int area = 1;
  std::vector<int> columns;
  std::vector<int> eq_rows;    // rows touching only this area's columns
  std::vector<int> ineq_rows;
  std::vector<int> quad_rows;
  // Equality rows hosted by this area that also touch one other area.
  std::vector<int> coupling_rows;
  // Foreign columns referenced by coupling_rows.
  std::vector<int> neighbor_columns;
};

std::vector<AreaView> area_views(const BuildResult& build, const NetworkInstance& inst);

}  // namespace ogpf

#endif  // OGPF_MIPBUILD_HPP
