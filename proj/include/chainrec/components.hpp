#pragma once

#include <string>
#include <vector>

#include "chainrec/chain_graph.hpp"

// Component-level analyses: chain recurrent boxes, terminality, chain
// stability, graph period, and the periodic/odometer refinement heuristic.

namespace chainrec {

struct ComponentProfile {
  ComponentId id = 0;
  BoxSet boxes;
  std::uint64_t box_count = 0;
  std::uint32_t period = 1;  // gcd of cycle lengths in the component
  bool is_terminal = false;
  double box_width = 0.0;  // grid width at the profiled depth
};

enum class TerminalVerdict { periodic_like, odometer_like, other };

struct TerminalClassification {
  TerminalVerdict verdict = TerminalVerdict::other;
  std::vector<std::uint32_t> period_sequence;
  std::vector<double> measure_sequence;  // box_count * box_width per depth
};

std::string to_string(TerminalVerdict v);

// Union of boxes of all cyclic components (outer approximation of CR(f)).
BoxSet chain_recurrent_boxes(const ChainDecomposition& dec);

// Exactly the condensation sinks with a cycle.
std::vector<ComponentId> terminal_components(const ChainDecomposition& dec);

// Forward reach of the component stays within eps_boxes box widths of it.
bool verify_chain_stability(const ChainDecomposition& dec, ComponentId c,
                            int eps_boxes);

// Standard graph period: gcd of BFS-layer discrepancies over
// intra-component edges. Throws on acyclic components.
std::uint32_t component_period(const ChainDecomposition& dec, ComponentId c);

ComponentProfile profile_component(const ChainDecomposition& dec,
                                   ComponentId c);

// Matches the terminal component at each successive depth to the previous
// one by box-center containment (largest overlap wins); profiles must have
// strictly increasing resolution.
std::vector<ComponentProfile> track_terminal_across_depths(
    const std::vector<ChainDecomposition>& decs);

// periodic_like when the period stabilizes and the component stays small;
// odometer_like when the period strictly multiplies at two or more
// refinement steps while the total measure shrinks.
TerminalClassification classify_terminal(
    const std::vector<ComponentProfile>& profiles);

}  // namespace chainrec
