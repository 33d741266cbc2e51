#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chainrec/chain_graph.hpp"
#include "chainrec/components.hpp"

// Omega-limit estimates by orbit simulation, chain omega-limits by graph
// reachability, the basin partition over terminal components, and the
// refinement study behind the density theorems.

namespace chainrec {

constexpr ComponentId kAmbiguous = 0xffffffffu;

struct OmegaEstimate {
  Point seed{0.0, 0.0};
  int transient = 0;
  int horizon = 0;
  BoxSet boxes;  // boxes hit by f^i(seed), transient <= i < horizon
};

struct BasinReport {
  std::vector<ComponentId> assignment;  // per box; kAmbiguous when not unique
  double v_fraction = 0.0;              // assigned / total
  std::vector<std::uint64_t> per_component_basin_size;  // per component
};

struct WMembership {
  Point seed{0.0, 0.0};
  int j = 1;
  int m = 0;
  bool member = false;
};

struct CoverageRow {
  int depth = 0;
  double v_fraction = 0.0;
  double w_sample_fraction = 0.0;
};

struct CoverageParams {
  double delta = -1.0;  // < 0: one box width at each depth
  double rigor_margin = 0.0;
  int w_j = 4;
  int w_m = 100;
  int w_horizon = -1;  // < 0: 10 * 2^depth
  int samples = 100;
  std::uint64_t seed = 0;
};

OmegaEstimate omega_estimate(const SystemDef& sys, Point x, int transient,
                             int horizon, const Grid& grid);

// Forward reach of the cyclic part of the forward reach of b: exactly the
// boxes admitting arbitrarily long walks from b.
BoxSet chain_omega(const ChainGraph& g, const ChainDecomposition& dec,
                   BoxId b);

// A box is assigned to terminal C when C is the only cyclic component it
// reaches; otherwise it is ambiguous.
BasinReport terminal_basin_partition(const ChainDecomposition& dec);

// W_{j,m} membership at grid precision: every box of the assigned terminal
// component lies within 1/j of some orbit box f^i(x), m <= i <= m+horizon.
// Throws std::invalid_argument when the seed's box is ambiguous.
WMembership w_membership(const SystemDef& sys, Point x, int j, int m,
                         int horizon, const ChainDecomposition& dec,
                         const BasinReport& basins, const Grid& grid);

std::vector<CoverageRow> coverage_study(const SystemDef& sys,
                                        const std::vector<int>& depths,
                                        const CoverageParams& params);

}  // namespace chainrec
