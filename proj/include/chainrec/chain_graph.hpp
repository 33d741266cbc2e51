#pragma once

#include <cstdint>
#include <vector>

#include "chainrec/geometry.hpp"
#include "chainrec/systems.hpp"

// The delta-chain digraph over grid boxes and its SCC decomposition.
// Edges overapproximate the relation "exists x in b, y in b' with
// d(f(x), y) <= delta", so chain recurrence and components computed on the
// graph are outer approximations of the true ones.

namespace chainrec {

using ComponentId = std::uint32_t;

struct ChainGraphParams {
  double delta = 0.0;         // the delta of a delta-chain
  double rigor_margin = 0.0;  // extra enclosure padding
};

// Axis-aligned enclosure of a box image, stored as center + per-axis
// halfwidth (so wrapped enclosures stay representable).
struct Enclosure {
  Point center{0.0, 0.0};
  std::array<double, 2> half{0.0, 0.0};
};

struct ChainGraph {
  Grid grid;
  ChainGraphParams params;
  std::vector<std::vector<BoxId>> edges;  // sorted adjacency per box

  std::uint64_t node_count() const { return grid.count; }
};

// Encloses f(box): the system's exact per-axis range when available,
// otherwise f(center) and corner images padded per axis by
// max(lipschitz(b) * box_diameter/2, observed corner spread) + margin.
Enclosure box_image(const SystemDef& sys, BoxId b, const Grid& grid,
                    double margin);

// b -> b' when the enclosure of b overlaps the open interior of b', or
// lies at (closed-region) distance < delta from it. The image box of the
// center is always an edge, so out-degree >= 1.
ChainGraph build_chain_graph(const SystemDef& sys, const Grid& grid,
                             const ChainGraphParams& params);

enum class Direction { forward, backward };

BoxSet reachable_set(const ChainGraph& g, const BoxSet& sources,
                     Direction direction);

struct ChainDecomposition {
  ChainGraph graph;
  std::vector<ComponentId> scc_of;            // per box
  std::vector<BoxSet> components;             // per component, sorted boxes
  std::vector<bool> has_cycle;                // >=2 nodes or a self-loop
  std::vector<std::vector<ComponentId>> dag;  // condensation successors
  std::vector<bool> terminal;                 // cyclic sink
};

// Tarjan SCC + condensation. Components are numbered in ascending order of
// their smallest box id, so the decomposition is deterministic.
ChainDecomposition scc_decompose(const ChainGraph& g);

// Generic digraph SCC used by both the box pipeline and the finite-system
// oracle tests.
struct SccResult {
  std::vector<ComponentId> comp_of;
  std::vector<std::vector<std::uint32_t>> members;
  std::vector<bool> has_cycle;
  std::vector<std::vector<ComponentId>> dag;
  std::vector<bool> terminal;
};
SccResult scc_of_adjacency(const std::vector<std::vector<std::uint32_t>>& adj);

}  // namespace chainrec
