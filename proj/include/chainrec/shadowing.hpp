#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chainrec/chain_graph.hpp"

// Pseudo-orbit generation, epsilon-shadowing search, empirical shadowing
// modulus estimation, and chain-continuity cell analysis.

namespace chainrec {

enum class PseudoOrbitKind { perturbed_orbit, random_walk, spliced };

struct PseudoOrbit {
  std::vector<Point> points;
  double delta = 0.0;
  PseudoOrbitKind kind = PseudoOrbitKind::perturbed_orbit;
};

struct ShadowingResult {
  bool found = false;
  std::optional<Point> witness;
  double deviation = 0.0;  // max_i d(f^i(witness), x_i) when found
  int search_depth = 0;
};

struct CCReport {
  std::vector<std::pair<int, int>> ladder;  // (j, l) pairs
  // membership[box][ladder index]
  std::vector<std::vector<bool>> membership;
  double cc_fraction = 0.0;
};

// perturbed_orbit: x_{i+1} = f(x_i) + uniform noise of radius <= delta;
// random_walk: steps of magnitude exactly delta with random sign per axis;
// spliced: two true orbit segments joined by one jump of size <= delta.
// The delta bound is checked at construction.
PseudoOrbit generate_pseudo_orbit(const SystemDef& sys, Point x0, double delta,
                                  int length, std::uint64_t seed,
                                  PseudoOrbitKind kind);

double pseudo_orbit_defect(const SystemDef& sys, const PseudoOrbit& po);

double orbit_deviation(const SystemDef& sys, Point x, const PseudoOrbit& po);

// Exhaustive scan over box centers at the given depth within epsilon of
// x_0. found=false is only "no witness at this depth", never a
// non-shadowing certificate.
ShadowingResult shadowing_search(const SystemDef& sys, const PseudoOrbit& po,
                                 double epsilon, int search_depth);

// Backward pullback through the inverse branch nearest each x_i; only for
// expanding 1D maps (doubling, tent). Deviation <= delta * s/(s-1).
Point inverse_branch_shadow(const SystemDef& sys, const PseudoOrbit& po);

struct ModulusParams {
  int trials = 10;
  int length = 8;
  int search_depth = 14;
  int bisection_steps = 12;
  std::uint64_t seed = 0;
};

// Largest delta in (0, epsilon] for which all sampled pseudo-orbits were
// shadowed within epsilon; nullopt when none was accepted. Empirical.
std::optional<double> estimate_shadowing_modulus(const SystemDef& sys,
                                                 double epsilon,
                                                 const ModulusParams& params);

// True when every reachability layer from b in g_j (delta = 1/j), up to
// the horizon, stays within 1/l of the orbit box of the center of b.
bool chain_continuity_cell(const ChainGraph& g_j, const SystemDef& sys,
                           BoxId b, int l, int horizon);

// cc_fraction: boxes b such that for every l in the ladder some j in the
// ladder has chain_continuity_cell(b, j, l).
CCReport cc_report(const SystemDef& sys, const Grid& grid,
                   const std::vector<std::pair<int, int>>& ladder,
                   int horizon = -1 /* < 0: 50*j per entry */);

}  // namespace chainrec
