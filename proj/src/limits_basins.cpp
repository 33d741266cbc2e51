#include "chainrec/limits_basins.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace chainrec {

OmegaEstimate omega_estimate(const SystemDef& sys, Point x, int transient,
                             int horizon, const Grid& grid) {
  if (transient < 0 || horizon <= transient)
    throw std::invalid_argument("need 0 <= transient < horizon");
  OmegaEstimate est;
  est.seed = x;
  est.transient = transient;
  est.horizon = horizon;
  Point p = sys.domain.canonicalize(x);
  for (int i = 0; i < horizon; ++i) {
    if (i >= transient) est.boxes.push_back(box_of(p, grid));
    p = evaluate(sys, p);
  }
  std::sort(est.boxes.begin(), est.boxes.end());
  est.boxes.erase(std::unique(est.boxes.begin(), est.boxes.end()),
                  est.boxes.end());
  return est;
}

BoxSet chain_omega(const ChainGraph& g, const ChainDecomposition& dec,
                   BoxId b) {
  BoxSet reach = reachable_set(g, {b}, Direction::forward);
  BoxSet cyclic;
  for (BoxId v : reach)
    if (dec.has_cycle[dec.scc_of[v]]) cyclic.push_back(v);
  if (cyclic.empty()) return {};
  return reachable_set(g, cyclic, Direction::forward);
}

BasinReport terminal_basin_partition(const ChainDecomposition& dec) {
  const std::size_t ncomp = dec.components.size();
  // Per component: the unique reachable cyclic component, or kAmbiguous
  // when there are several. Resolved in reverse topological order.
  std::vector<ComponentId> summary(ncomp, kAmbiguous);
  std::vector<std::uint8_t> done(ncomp, 0);
  std::vector<ComponentId> stack;
  constexpr ComponentId kNone = 0xfffffffeu;

  for (ComponentId root = 0; root < ncomp; ++root) {
    if (done[root]) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      ComponentId c = stack.back();
      if (done[c]) { stack.pop_back(); continue; }
      bool ready = true;
      for (ComponentId s : dec.dag[c])
        if (!done[s]) { ready = false; stack.push_back(s); }
      if (!ready) continue;
      ComponentId acc = dec.has_cycle[c] ? c : kNone;
      for (ComponentId s : dec.dag[c]) {
        ComponentId sv = summary[s];
        if (sv == kNone) continue;
        if (acc == kNone)
          acc = sv;
        else if (acc != sv)
          acc = kAmbiguous;
        if (acc == kAmbiguous) break;
      }
      summary[c] = acc;
      done[c] = 1;
      stack.pop_back();
    }
  }

  BasinReport report;
  report.assignment.resize(dec.graph.node_count());
  report.per_component_basin_size.assign(ncomp, 0);
  std::uint64_t assigned = 0;
  for (BoxId b = 0; b < dec.graph.node_count(); ++b) {
    ComponentId s = summary[dec.scc_of[b]];
    if (s != kAmbiguous && dec.terminal[s]) {
      report.assignment[b] = s;
      report.per_component_basin_size[s]++;
      ++assigned;
    } else {
      report.assignment[b] = kAmbiguous;
    }
  }
  report.v_fraction =
      static_cast<double>(assigned) / static_cast<double>(dec.graph.node_count());
  return report;
}

namespace {

double box_box_distance(const Box& a, const Box& b, const Domain& d) {
  double s = 0.0;
  for (int ax = 0; ax < d.dim(); ++ax) {
    double gap = 1e300;
    if (d.periodic()) {
      for (int k = -1; k <= 1; ++k) {
        double lo = a.lo[ax] + k, hi = a.hi[ax] + k;
        double g = 0.0;
        if (hi < b.lo[ax]) g = b.lo[ax] - hi;
        else if (lo > b.hi[ax]) g = lo - b.hi[ax];
        gap = std::min(gap, g);
      }
    } else {
      gap = 0.0;
      if (a.hi[ax] < b.lo[ax]) gap = b.lo[ax] - a.hi[ax];
      else if (a.lo[ax] > b.hi[ax]) gap = a.lo[ax] - b.hi[ax];
    }
    s += gap * gap;
  }
  return std::sqrt(s);
}

}  // namespace

WMembership w_membership(const SystemDef& sys, Point x, int j, int m,
                         int horizon, const ChainDecomposition& dec,
                         const BasinReport& basins, const Grid& grid) {
  if (j < 1 || m < 0 || horizon < 0)
    throw std::invalid_argument("need j >= 1, m >= 0, horizon >= 0");
  WMembership wm;
  wm.seed = x;
  wm.j = j;
  wm.m = m;
  BoxId b0 = box_of(x, grid);
  ComponentId c = basins.assignment[b0];
  if (c == kAmbiguous)
    throw std::invalid_argument("w_membership: seed box is ambiguous");

  BoxSet orbit_boxes;
  Point p = sys.domain.canonicalize(x);
  for (int i = 0; i <= m + horizon; ++i) {
    if (i >= m) orbit_boxes.push_back(box_of(p, grid));
    p = evaluate(sys, p);
  }
  std::sort(orbit_boxes.begin(), orbit_boxes.end());
  orbit_boxes.erase(std::unique(orbit_boxes.begin(), orbit_boxes.end()),
                    orbit_boxes.end());

  const double radius = 1.0 / j;
  wm.member = true;
  for (BoxId cb : dec.components[c]) {
    Box target = grid.bounds(cb);
    bool covered = false;
    for (BoxId ob : orbit_boxes) {
      if (box_box_distance(grid.bounds(ob), target, grid.domain) <= radius) {
        covered = true;
        break;
      }
    }
    if (!covered) { wm.member = false; break; }
  }
  return wm;
}

std::vector<CoverageRow> coverage_study(const SystemDef& sys,
                                        const std::vector<int>& depths,
                                        const CoverageParams& params) {
  for (std::size_t i = 0; i + 1 < depths.size(); ++i)
    if (depths[i] >= depths[i + 1])
      throw std::invalid_argument("depths must be strictly increasing");

  std::vector<CoverageRow> rows;
  for (int depth : depths) {
    Grid grid = subdivide(sys.domain, depth);
    ChainGraphParams gp;
    gp.delta = params.delta < 0.0 ? grid.width(0) : params.delta;
    gp.rigor_margin = params.rigor_margin;
    ChainGraph graph = build_chain_graph(sys, grid, gp);
    ChainDecomposition dec = scc_decompose(graph);
    BasinReport basins = terminal_basin_partition(dec);

    int horizon = params.w_horizon < 0 ? 10 * (1 << depth) : params.w_horizon;
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // Seeds in ambiguous boxes violate the w_membership precondition; the
    // fraction is taken over validly seeded samples only.
    int passed = 0;
    int valid = 0;
    for (int s = 0; s < params.samples; ++s) {
      Point x{0.0, 0.0};
      for (int a = 0; a < sys.domain.dim(); ++a)
        x[a] = sys.domain.lo[a] + sys.domain.span(a) * unif(rng);
      if (basins.assignment[box_of(x, grid)] == kAmbiguous) continue;
      ++valid;
      if (w_membership(sys, x, params.w_j, params.w_m, horizon, dec, basins,
                       grid).member)
        ++passed;
    }
    CoverageRow row;
    row.depth = depth;
    row.v_fraction = basins.v_fraction;
    row.w_sample_fraction =
        valid == 0 ? 0.0
                   : static_cast<double>(passed) / static_cast<double>(valid);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace chainrec
