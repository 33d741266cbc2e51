#include "chainrec/shadowing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace chainrec {

namespace {

Point perturb(const Domain& dom, Point base, Point noise) {
  Point p = base;
  for (int a = 0; a < dom.dim(); ++a) p[a] += noise[a];
  if (dom.periodic()) return dom.canonicalize(p);
  for (int a = 0; a < dom.dim(); ++a)
    p[a] = std::clamp(p[a], dom.lo[a], dom.hi[a]);
  return p;
}

}  // namespace

double pseudo_orbit_defect(const SystemDef& sys, const PseudoOrbit& po) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < po.points.size(); ++i)
    worst = std::max(worst, metric_distance(evaluate(sys, po.points[i]),
                                            po.points[i + 1], sys.domain));
  return worst;
}

PseudoOrbit generate_pseudo_orbit(const SystemDef& sys, Point x0, double delta,
                                  int length, std::uint64_t seed,
                                  PseudoOrbitKind kind) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (length < 2) throw std::invalid_argument("length must be >= 2");
  const Domain& dom = sys.domain;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  PseudoOrbit po;
  po.delta = delta;
  po.kind = kind;
  po.points.push_back(dom.canonicalize(x0));

  auto noise_step = [&](Point fx) {
    // Rejection-sample noise that stays inside the delta ball and, on
    // non-periodic domains, inside the domain after clamping.
    for (int attempt = 0; attempt < 64; ++attempt) {
      Point n{0.0, 0.0};
      double norm2 = 0.0;
      for (int a = 0; a < dom.dim(); ++a) {
        n[a] = delta * unif(rng);
        norm2 += n[a] * n[a];
      }
      if (norm2 > delta * delta) continue;
      Point cand = perturb(dom, fx, n);
      if (metric_distance(cand, fx, dom) <= delta + 1e-12) return cand;
    }
    return fx;  // delta == 0 or the ball sticks out: fall back to the orbit
  };

  if (kind == PseudoOrbitKind::spliced) {
    int jump_at = length / 2;
    Point p = po.points.front();
    for (int i = 1; i <= length; ++i) {
      Point fp = evaluate(sys, p);
      p = (i == jump_at) ? noise_step(fp) : fp;
      po.points.push_back(p);
    }
  } else {
    Point p = po.points.front();
    for (int i = 1; i <= length; ++i) {
      Point fp = evaluate(sys, p);
      if (kind == PseudoOrbitKind::perturbed_orbit) {
        p = noise_step(fp);
      } else {
        // random_walk: full-magnitude steps so drift accumulates
        Point n{0.0, 0.0};
        double scale = delta / std::sqrt(static_cast<double>(dom.dim()));
        for (int a = 0; a < dom.dim(); ++a)
          n[a] = (unif(rng) >= 0.0 ? scale : -scale);
        Point cand = perturb(dom, fp, n);
        p = (metric_distance(cand, fp, dom) <= delta + 1e-12) ? cand : fp;
      }
      po.points.push_back(p);
    }
  }

  if (pseudo_orbit_defect(sys, po) > delta + 1e-12)
    throw std::runtime_error("pseudo-orbit generation violated its delta");
  return po;
}

double orbit_deviation(const SystemDef& sys, Point x, const PseudoOrbit& po) {
  double worst = 0.0;
  Point p = sys.domain.canonicalize(x);
  for (std::size_t i = 0; i < po.points.size(); ++i) {
    worst = std::max(worst, metric_distance(p, po.points[i], sys.domain));
    p = evaluate(sys, p);
  }
  return worst;
}

ShadowingResult shadowing_search(const SystemDef& sys, const PseudoOrbit& po,
                                 double epsilon, int search_depth) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
  ShadowingResult res;
  res.search_depth = search_depth;
  Grid grid = subdivide(sys.domain, search_depth);
  const Point x0 = po.points.front();

  double best = 1e300;
  std::optional<Point> best_point;
  for (BoxId b = 0; b < grid.count; ++b) {
    Point c = grid.center(b);
    if (metric_distance(c, x0, sys.domain) > epsilon) continue;
    double dev = 0.0;
    Point p = c;
    for (std::size_t i = 0; i < po.points.size() && dev < best; ++i) {
      dev = std::max(dev, metric_distance(p, po.points[i], sys.domain));
      p = evaluate(sys, p);
    }
    if (dev < best) {  // ascending box id wins ties
      best = dev;
      best_point = c;
    }
  }
  if (best_point && best <= epsilon) {
    res.found = true;
    res.witness = best_point;
    res.deviation = best;
  }
  return res;
}

Point inverse_branch_shadow(const SystemDef& sys, const PseudoOrbit& po) {
  const Domain& dom = sys.domain;
  double slope;
  enum { kDoubling, kTent } family;
  if (sys.name == "doubling") {
    family = kDoubling;
    slope = 2.0;
  } else if (sys.name == "tent") {
    family = kTent;
    slope = sys.params.count("s") ? sys.params.at("s") : 2.0;
    if (slope <= 1.0)
      throw std::invalid_argument("inverse_branch_shadow: tent slope must be > 1");
  } else {
    throw std::invalid_argument(
        "inverse_branch_shadow: only expanding 1D maps (doubling, tent)");
  }

  double z = po.points.back()[0];
  for (std::size_t k = po.points.size() - 1; k-- > 0;) {
    double target = po.points[k][0];
    double b1, b2;
    if (family == kDoubling) {
      b1 = z / 2.0;
      b2 = z / 2.0 + 0.5;
    } else {
      double y = std::clamp(z, 0.0, slope / 2.0);
      b1 = y / slope;
      b2 = 1.0 - y / slope;
    }
    double d1 = metric_distance({b1, 0.0}, {target, 0.0}, dom);
    double d2 = metric_distance({b2, 0.0}, {target, 0.0}, dom);
    z = (d1 <= d2) ? b1 : b2;
  }
  return dom.canonicalize({z, 0.0});
}

std::optional<double> estimate_shadowing_modulus(const SystemDef& sys,
                                                 double epsilon,
                                                 const ModulusParams& params) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
  if (params.trials < 1) throw std::invalid_argument("trials must be >= 1");

  auto accepted = [&](double delta) {
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const PseudoOrbitKind kinds[] = {PseudoOrbitKind::perturbed_orbit,
                                     PseudoOrbitKind::spliced};
    for (int t = 0; t < params.trials; ++t) {
      Point x0{0.0, 0.0};
      for (int a = 0; a < sys.domain.dim(); ++a)
        x0[a] = sys.domain.lo[a] + sys.domain.span(a) * unif(rng);
      PseudoOrbit po = generate_pseudo_orbit(sys, x0, delta, params.length,
                                             rng(), kinds[t % 2]);
      if (!shadowing_search(sys, po, epsilon, params.search_depth).found)
        return false;
    }
    return true;
  };

  double lo = 0.0, hi = epsilon;
  if (accepted(hi)) return hi;
  for (int i = 0; i < params.bisection_steps; ++i) {
    double mid = (lo + hi) / 2.0;
    if (accepted(mid))
      lo = mid;
    else
      hi = mid;
  }
  if (lo == 0.0) return std::nullopt;
  return lo;
}

bool chain_continuity_cell(const ChainGraph& g_j, const SystemDef& sys,
                           BoxId b, int l, int horizon) {
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  const Grid& grid = g_j.grid;
  const std::uint64_t n = g_j.node_count();
  const double radius = 1.0 / l;

  std::vector<std::uint8_t> layer(n, 0), next(n, 0);
  std::vector<BoxId> frontier{b}, next_frontier;
  layer[b] = 1;
  Point p = grid.center(b);
  for (int step = 0; step <= horizon; ++step) {
    // layer must lie within the 1/l-neighborhood of the orbit box
    BoxSet hood = neighborhood_boxes({box_of(p, grid)}, radius, grid);
    for (BoxId v = 0; v < n; ++v)
      if (layer[v] && !boxset_contains(hood, v)) return false;
    if (step == horizon) break;
    std::fill(next.begin(), next.end(), 0);
    next_frontier.clear();
    for (BoxId u = 0; u < n; ++u) {
      if (!layer[u]) continue;
      for (BoxId v : g_j.edges[u])
        if (!next[v]) { next[v] = 1; next_frontier.push_back(v); }
    }
    layer.swap(next);
    frontier.swap(next_frontier);
    p = evaluate(sys, p);
  }
  return true;
}

CCReport cc_report(const SystemDef& sys, const Grid& grid,
                   const std::vector<std::pair<int, int>>& ladder,
                   int horizon) {
  if (ladder.empty()) throw std::invalid_argument("ladder must be nonempty");
  CCReport rep;
  rep.ladder = ladder;
  rep.membership.assign(grid.count, std::vector<bool>(ladder.size(), false));

  std::map<int, ChainGraph> graphs;  // one graph per distinct j
  for (const auto& [j, l] : ladder) {
    if (j < 1 || l < 1) throw std::invalid_argument("ladder entries need j,l >= 1");
    if (!graphs.count(j)) {
      ChainGraphParams gp;
      gp.delta = 1.0 / j;
      graphs.emplace(j, build_chain_graph(sys, grid, gp));
    }
  }
  std::vector<int> ls;
  for (const auto& [j, l] : ladder) ls.push_back(l);
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

  // The membership quantifier pairs every l with every j that appears in
  // the ladder, so evaluate the full (j, l) cross product once.
  std::map<std::pair<int, int>, std::vector<bool>> cells;
  for (const auto& [j, g_j] : graphs) {
    int h = horizon < 0 ? 50 * j : horizon;
    for (int l : ls) {
      std::vector<bool> col(grid.count, false);
      for (BoxId b = 0; b < grid.count; ++b)
        col[b] = chain_continuity_cell(g_j, sys, b, l, h);
      cells.emplace(std::make_pair(j, l), std::move(col));
    }
  }
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const auto& col = cells.at(ladder[k]);
    for (BoxId b = 0; b < grid.count; ++b) rep.membership[b][k] = col[b];
  }

  std::uint64_t in_cc = 0;
  for (BoxId b = 0; b < grid.count; ++b) {
    bool all_l = true;
    for (int l : ls) {
      bool some_j = false;
      for (const auto& [j, g_j] : graphs)
        if (cells.at({j, l})[b]) { some_j = true; break; }
      if (!some_j) { all_l = false; break; }
    }
    if (all_l) ++in_cc;
  }
  rep.cc_fraction =
      static_cast<double>(in_cc) / static_cast<double>(grid.count);
  return rep;
}

}  // namespace chainrec
