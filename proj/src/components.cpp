#include "chainrec/components.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace chainrec {

std::string to_string(TerminalVerdict v) {
  switch (v) {
    case TerminalVerdict::periodic_like: return "periodic_like";
    case TerminalVerdict::odometer_like: return "odometer_like";
    default: return "other";
  }
}

BoxSet chain_recurrent_boxes(const ChainDecomposition& dec) {
  BoxSet out;
  for (ComponentId c = 0; c < dec.components.size(); ++c)
    if (dec.has_cycle[c])
      out.insert(out.end(), dec.components[c].begin(), dec.components[c].end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ComponentId> terminal_components(const ChainDecomposition& dec) {
  std::vector<ComponentId> out;
  for (ComponentId c = 0; c < dec.components.size(); ++c)
    if (dec.terminal[c]) out.push_back(c);
  return out;
}

bool verify_chain_stability(const ChainDecomposition& dec, ComponentId c,
                            int eps_boxes) {
  if (c >= dec.components.size())
    throw std::out_of_range("unknown component id");
  if (eps_boxes < 0) throw std::invalid_argument("eps_boxes must be >= 0");
  const Grid& grid = dec.graph.grid;
  double w = 0.0;
  for (int a = 0; a < grid.domain.dim(); ++a) w = std::max(w, grid.width(a));
  BoxSet reach = reachable_set(dec.graph, dec.components[c], Direction::forward);
  BoxSet hood = neighborhood_boxes(dec.components[c], eps_boxes * w, grid);
  return boxset_subset(reach, hood);
}

std::uint32_t component_period(const ChainDecomposition& dec, ComponentId c) {
  if (c >= dec.components.size())
    throw std::out_of_range("unknown component id");
  if (!dec.has_cycle[c])
    throw std::invalid_argument("component period undefined: no cycle");
  const BoxSet& members = dec.components[c];
  // BFS levels from the smallest member, restricted to the component;
  // gcd over level[u] + 1 - level[v] on intra-component edges.
  std::vector<std::int64_t> level(dec.graph.node_count(), -1);
  std::queue<BoxId> q;
  q.push(members.front());
  level[members.front()] = 0;
  std::int64_t g = 0;
  while (!q.empty()) {
    BoxId u = q.front();
    q.pop();
    for (BoxId v : dec.graph.edges[u]) {
      if (dec.scc_of[v] != c) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      } else {
        g = std::gcd(g, level[u] + 1 - level[v]);
      }
    }
  }
  return static_cast<std::uint32_t>(g == 0 ? 1 : std::llabs(g));
}

ComponentProfile profile_component(const ChainDecomposition& dec,
                                   ComponentId c) {
  ComponentProfile p;
  p.id = c;
  p.boxes = dec.components[c];
  p.box_count = p.boxes.size();
  p.is_terminal = dec.terminal[c];
  p.period = dec.has_cycle[c] ? component_period(dec, c) : 1;
  p.box_width = dec.graph.grid.width(0);
  return p;
}

std::vector<ComponentProfile> track_terminal_across_depths(
    const std::vector<ChainDecomposition>& decs) {
  if (decs.size() < 3)
    throw std::invalid_argument("need at least 3 depths to track");
  std::vector<ComponentProfile> out;
  BoxSet prev_boxes;
  const Grid* prev_grid = nullptr;
  for (const auto& dec : decs) {
    auto terminals = terminal_components(dec);
    if (terminals.empty())
      throw std::runtime_error("tracking error: no terminal component");
    ComponentId chosen = terminals.front();
    if (prev_grid == nullptr) {
      // Coarsest depth: the largest terminal component.
      for (ComponentId c : terminals)
        if (dec.components[c].size() > dec.components[chosen].size())
          chosen = c;
    } else {
      // Largest count of box centers landing inside the previous boxes.
      std::size_t best = 0;
      bool any = false;
      for (ComponentId c : terminals) {
        std::size_t hits = 0;
        for (BoxId b : dec.components[c]) {
          BoxId parent = box_of(dec.graph.grid.center(b), *prev_grid);
          if (boxset_contains(prev_boxes, parent)) ++hits;
        }
        if (!any || hits > best) { any = true; best = hits; chosen = c; }
      }
      if (best == 0)
        throw std::runtime_error("tracking error: attractor lost across depths");
    }
    out.push_back(profile_component(dec, chosen));
    prev_boxes = dec.components[chosen];
    prev_grid = &decs[out.size() - 1].graph.grid;
  }
  return out;
}

TerminalClassification classify_terminal(
    const std::vector<ComponentProfile>& profiles) {
  if (profiles.size() < 3)
    throw std::invalid_argument("need at least 3 depths to classify");
  TerminalClassification tc;
  for (const auto& p : profiles) {
    tc.period_sequence.push_back(p.period);
    tc.measure_sequence.push_back(static_cast<double>(p.box_count) *
                                  p.box_width);
  }
  const auto& ps = tc.period_sequence;
  const auto& ms = tc.measure_sequence;

  bool divisible_chain = true;
  int multiplications = 0;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    if (ps[i] == 0 || ps[i + 1] % ps[i] != 0 || ps[i + 1] < ps[i])
      divisible_chain = false;
    else if (ps[i + 1] > ps[i])
      ++multiplications;
  }
  if (divisible_chain && multiplications >= 2 && ms.back() < ms.front()) {
    tc.verdict = TerminalVerdict::odometer_like;
    return tc;
  }

  bool stable = std::all_of(ps.begin(), ps.end(),
                            [&](std::uint32_t p) { return p == ps.back(); });
  if (stable && profiles.back().box_count <= 4ull * ps.back()) {
    tc.verdict = TerminalVerdict::periodic_like;
    return tc;
  }
  tc.verdict = TerminalVerdict::other;
  return tc;
}

}  // namespace chainrec
