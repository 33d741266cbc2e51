#include "chainrec/chain_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainrec {

namespace {

double axis_center_dist(double x, double y, bool periodic) {
  double d = std::fabs(x - y);
  if (periodic) {
    d = std::fmod(d, 1.0);
    d = std::min(d, 1.0 - d);
  }
  return d;
}

// Edge predicate: open overlap with the half-open target box, or
// closed-region gap strictly below delta.
bool enclosure_reaches(const Enclosure& e, BoxId target, const Grid& grid,
                       double delta) {
  const Domain& dom = grid.domain;
  Point tc = grid.center(target);
  bool overlap = true;
  double gap2 = 0.0;
  for (int a = 0; a < dom.dim(); ++a) {
    double halfsum = e.half[a] + grid.width(a) / 2.0;
    double cd = axis_center_dist(e.center[a], tc[a], dom.periodic());
    if (!(cd < halfsum)) overlap = false;
    double gap = std::max(0.0, cd - halfsum);
    gap2 += gap * gap;
  }
  return overlap || std::sqrt(gap2) < delta;
}

}  // namespace

Enclosure box_image(const SystemDef& sys, BoxId b, const Grid& grid,
                    double margin) {
  if (margin < 0.0) throw std::invalid_argument("margin must be >= 0");
  const Domain& dom = grid.domain;
  const Box box = grid.bounds(b);

  if (sys.range) {
    // Exact per-axis hull of f(box), possibly unwrapped past a periodic
    // seam; store as midpoint + halfwidth.
    Box r = sys.range(box);
    Enclosure e;
    for (int a = 0; a < dom.dim(); ++a) {
      e.center[a] = (r.lo[a] + r.hi[a]) / 2.0;
      e.half[a] = (r.hi[a] - r.lo[a]) / 2.0 + margin;
      if (dom.periodic()) {
        e.center[a] -= std::floor(e.center[a]);
        e.half[a] = std::min(e.half[a], 0.5);
      }
    }
    return e;
  }

  const Point c = grid.center(b);
  const Point fc = evaluate(sys, c);
  const double lip = sys.lipschitz(box);
  const double pad = lip * grid.box_diameter() / 2.0;

  Enclosure e;
  e.center = fc;
  for (int a = 0; a < dom.dim(); ++a) e.half[a] = pad;

  // Widen per axis so every corner image is contained.
  const int corners = 1 << dom.dim();
  for (int mask = 0; mask < corners; ++mask) {
    Point corner = c;
    for (int a = 0; a < dom.dim(); ++a)
      corner[a] = (mask >> a & 1) ? box.hi[a] : box.lo[a];
    Point img = evaluate(sys, corner);
    for (int a = 0; a < dom.dim(); ++a)
      e.half[a] = std::max(e.half[a],
                           axis_center_dist(fc[a], img[a], dom.periodic()));
  }
  for (int a = 0; a < dom.dim(); ++a) {
    e.half[a] += margin;
    if (dom.periodic()) e.half[a] = std::min(e.half[a], 0.5);
  }
  return e;
}

ChainGraph build_chain_graph(const SystemDef& sys, const Grid& grid,
                             const ChainGraphParams& params) {
  if (params.delta < 0.0 || !std::isfinite(params.delta))
    throw std::invalid_argument("delta must be finite and >= 0");
  ChainGraph g;
  g.grid = grid;
  g.params = params;
  g.edges.resize(grid.count);

  const Domain& dom = grid.domain;
  const int dim = dom.dim();
  const std::int64_t cells = grid.cells;

  for (BoxId b = 0; b < grid.count; ++b) {
    Enclosure e = box_image(sys, b, grid, params.rigor_margin);
    std::int64_t center_idx[2] = {0, 0};
    std::int64_t radius[2] = {0, 0};
    for (int a = 0; a < dim; ++a) {
      double w = grid.width(a);
      center_idx[a] =
          static_cast<std::int64_t>(std::floor((e.center[a] - dom.lo[a]) / w));
      center_idx[a] = std::clamp<std::int64_t>(center_idx[a], 0, cells - 1);
      double reach = e.half[a] + w / 2.0 + params.delta;
      radius[a] = static_cast<std::int64_t>(std::floor(reach / w)) + 1;
      radius[a] = std::min<std::int64_t>(radius[a], cells);
    }

    auto& out = g.edges[b];
    for (std::int64_t dy = (dim == 2 ? -radius[1] : 0);
         dy <= (dim == 2 ? radius[1] : 0); ++dy) {
      std::int64_t iy = 0;
      if (dim == 2) {
        iy = center_idx[1] + dy;
        if (dom.periodic())
          iy = ((iy % cells) + cells) % cells;
        else if (iy < 0 || iy >= cells)
          continue;
      }
      for (std::int64_t dx = -radius[0]; dx <= radius[0]; ++dx) {
        std::int64_t ix = center_idx[0] + dx;
        if (dom.periodic())
          ix = ((ix % cells) + cells) % cells;
        else if (ix < 0 || ix >= cells)
          continue;
        BoxId target = static_cast<BoxId>(ix + iy * cells);
        if (enclosure_reaches(e, target, grid, params.delta))
          out.push_back(target);
      }
    }
    // f is total: the center image box is always reachable.
    out.push_back(box_of(evaluate(sys, grid.center(b)), grid));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return g;
}

BoxSet reachable_set(const ChainGraph& g, const BoxSet& sources,
                     Direction direction) {
  const std::uint64_t n = g.node_count();
  std::vector<std::vector<BoxId>> rev;
  const std::vector<std::vector<BoxId>>* adj = &g.edges;
  if (direction == Direction::backward) {
    rev.resize(n);
    for (BoxId u = 0; u < n; ++u)
      for (BoxId v : g.edges[u]) rev[v].push_back(u);
    adj = &rev;
  }
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<BoxId> stack;
  for (BoxId s : sources)
    if (!seen[s]) { seen[s] = 1; stack.push_back(s); }
  while (!stack.empty()) {
    BoxId u = stack.back();
    stack.pop_back();
    for (BoxId v : (*adj)[u])
      if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
  }
  BoxSet out;
  for (BoxId i = 0; i < n; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

SccResult scc_of_adjacency(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<std::uint32_t> stack, raw_comp(n, kUnset);
  std::uint32_t next_index = 0, comp_count = 0;

  // Iterative Tarjan; frames carry (node, next edge position).
  struct Frame { std::uint32_t node; std::size_t pos; };
  std::vector<Frame> call;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& f = call.back();
      std::uint32_t u = f.node;
      if (f.pos == 0) {
        index[u] = low[u] = next_index++;
        stack.push_back(u);
        on_stack[u] = 1;
      }
      bool descended = false;
      while (f.pos < adj[u].size()) {
        std::uint32_t v = adj[u][f.pos++];
        if (index[v] == kUnset) {
          call.push_back({v, 0});
          descended = true;
          break;
        }
        if (on_stack[v]) low[u] = std::min(low[u], index[v]);
      }
      if (descended) continue;
      if (low[u] == index[u]) {
        while (true) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          raw_comp[w] = comp_count;
          if (w == u) break;
        }
        ++comp_count;
      }
      call.pop_back();
      if (!call.empty()) {
        std::uint32_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[u]);
      }
    }
  }

  // Renumber components by ascending smallest member for determinism.
  std::vector<std::uint32_t> min_member(comp_count, kUnset);
  for (std::uint32_t v = 0; v < n; ++v)
    min_member[raw_comp[v]] = std::min(min_member[raw_comp[v]], v);
  std::vector<std::uint32_t> order(comp_count);
  for (std::uint32_t c = 0; c < comp_count; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return min_member[a] < min_member[b];
  });
  std::vector<std::uint32_t> remap(comp_count);
  for (std::uint32_t i = 0; i < comp_count; ++i) remap[order[i]] = i;

  SccResult res;
  res.comp_of.resize(n);
  res.members.assign(comp_count, {});
  for (std::uint32_t v = 0; v < n; ++v) {
    res.comp_of[v] = remap[raw_comp[v]];
    res.members[res.comp_of[v]].push_back(v);
  }

  res.has_cycle.assign(comp_count, false);
  res.dag.assign(comp_count, {});
  for (std::uint32_t u = 0; u < n; ++u) {
    ComponentId cu = res.comp_of[u];
    for (std::uint32_t v : adj[u]) {
      ComponentId cv = res.comp_of[v];
      if (cu == cv)
        res.has_cycle[cu] = true;  // intra-component edge => cycle
      else
        res.dag[cu].push_back(cv);
    }
  }
  for (auto& succ : res.dag) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  res.terminal.resize(comp_count);
  for (std::uint32_t c = 0; c < comp_count; ++c)
    res.terminal[c] = res.has_cycle[c] && res.dag[c].empty();
  return res;
}

ChainDecomposition scc_decompose(const ChainGraph& g) {
  SccResult r = scc_of_adjacency(g.edges);
  ChainDecomposition dec;
  dec.graph = g;
  dec.scc_of = std::move(r.comp_of);
  dec.components = std::move(r.members);
  dec.has_cycle = std::move(r.has_cycle);
  dec.dag = std::move(r.dag);
  dec.terminal = std::move(r.terminal);
  return dec;
}

}  // namespace chainrec
