// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "chainrec/finite_oracle.hpp"
#include "chainrec/report.hpp"

using namespace chainrec;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
  std::printf("criterion %d: %-4s %s%s%s\n", idx, ok ? "PASS" : "FAIL", what,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

ChainDecomposition decompose(const SystemDef& sys, int depth, double delta) {
  Grid g = subdivide(sys.domain, depth);
  return scc_decompose(build_chain_graph(sys, g, {delta, 0.0}));
}

// Criteria 1+2: lemma sweep over all functional systems n<=5 and 10^4
// seeded random total relations n<=8.
void criteria_1_2() {
  auto start = std::chrono::steady_clock::now();
  long reach_fail = 0, equiv_fail = 0, checked = 0;
  auto visit = [&](const FiniteSystem& fs) {
    if (!verify_lemma_2_1(fs)) ++reach_fail;
    if (!verify_lemma_1_1(fs)) ++equiv_fail;
    ++checked;
  };
  for (int n = 1; n <= 5; ++n)
    for (const FiniteSystem& fs : enumerate_functional(n)) visit(fs);
  for (std::uint64_t seed = 0; seed < 10000; ++seed)
    visit(random_total_relation(2 + int(seed % 7), seed));
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  report(1, "every state reaches a terminal component",
         reach_fail == 0 && secs < 30.0,
         std::to_string(checked) + " systems, " + std::to_string(reach_fail) +
             " failures, " + std::to_string(secs) + " s");
  report(2, "terminal / omega-collapse / strong-connectivity equivalence",
         equiv_fail == 0, std::to_string(equiv_fail) + " failures");
}

// Criterion 3: terminal = maximal = chain-stable-at-0 on every
// decomposition the suite produces.
void criterion_3() {
  std::vector<ChainDecomposition> decs;
  decs.push_back(decompose(builtin("doubling"), 6, 0.0));
  decs.push_back(decompose(builtin("north_south"), 6, 0.0));
  decs.push_back(decompose(builtin("logistic", {{"r", 3.2}}), 7, 0.0));
  decs.push_back(decompose(builtin("rotation", {{"alpha", std::sqrt(2.0) - 1.0}}),
                           6, 1.0 / 64));
  decs.push_back(decompose(builtin("tent", {{"s", 2.0}}), 6, 0.0));
  decs.push_back(decompose(builtin("cat_map"), 5, 0.0));
  long mismatches = 0, comps = 0;
  for (const auto& dec : decs)
    for (ComponentId c = 0; c < dec.components.size(); ++c) {
      ++comps;
      bool term = dec.terminal[c];
      // Maximal in the condensation preorder: no edge leaves the component
      // and it carries a cycle.
      bool maximal = dec.has_cycle[c] && dec.dag[c].empty();
      bool stable = dec.has_cycle[c] && verify_chain_stability(dec, c, 0);
      if (term != maximal || term != stable) ++mismatches;
    }
  report(3, "terminal = maximal = chain-stable agreement", mismatches == 0,
         std::to_string(comps) + " components, " + std::to_string(mismatches) +
             " mismatches");
}

// Criterion 4: refinement trend for north_south.
void criterion_4() {
  auto start = std::chrono::steady_clock::now();
  CoverageParams params;
  params.samples = 100;
  params.seed = 0;
  auto rows = coverage_study(builtin("north_south"), {4, 5, 6, 7, 8}, params);
  bool ok = rows.size() == 5;
  double prev = 0.0;
  std::string vs;
  for (const auto& row : rows) {
    ok = ok && row.v_fraction >= prev - 1e-12;
    ok = ok && row.v_fraction >= 1.0 - 8.0 * std::ldexp(1.0, -row.depth);
    if (row.depth >= 6) ok = ok && row.w_sample_fraction >= 0.95;
    prev = row.v_fraction;
    vs += (vs.empty() ? "" : " ") + std::to_string(row.v_fraction);
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  ok = ok && secs < 60.0;
  report(4, "refinement trend of basin fractions", ok,
         "v_fraction " + vs + ", w_sample " +
             std::to_string(rows.back().w_sample_fraction) + ", " +
             std::to_string(secs) + " s");
}

// Criterion 5: known global structure at depth 8.
void criterion_5() {
  bool ok = true;
  std::string detail;

  for (const char* name : {"doubling", "rotation"}) {
    SystemDef sys = std::string(name) == "rotation"
                        ? builtin("rotation", {{"alpha", std::sqrt(2.0) - 1.0}})
                        : builtin(name);
    Grid g = subdivide(sys.domain, 8);
    double delta = std::string(name) == "rotation" ? g.width(0) : 0.0;
    ChainDecomposition dec =
        scc_decompose(build_chain_graph(sys, g, {delta, 0.0}));
    BasinReport rep = terminal_basin_partition(dec);
    bool this_ok = dec.components.size() == 1 && dec.terminal[0] &&
                   dec.components[0].size() == g.count &&
                   rep.v_fraction == 1.0;
    ok = ok && this_ok;
    detail += std::string(name) + (this_ok ? " ok; " : " FAIL; ");
  }

  SystemDef log32 = builtin("logistic", {{"r", 3.2}});
  ChainDecomposition dec = decompose(log32, 8, 0.0);
  auto terms = terminal_components(dec);
  bool log_ok = terms.size() == 1;
  if (log_ok) {
    log_ok = component_period(dec, terms[0]) == 2;
    double a = (3.2 + 1 + std::sqrt(0.2 * 4.2)) / 6.4;
    double b = 3.2 * a * (1 - a);
    Grid g = dec.graph.grid;
    log_ok = log_ok &&
             boxset_contains(dec.components[terms[0]], box_of({a, 0.0}, g)) &&
             boxset_contains(dec.components[terms[0]], box_of({b, 0.0}, g));
    BasinReport rep = terminal_basin_partition(dec);
    log_ok = log_ok && rep.v_fraction >= 0.95;
    detail += "logistic v_fraction " + std::to_string(rep.v_fraction);
  } else {
    detail += "logistic terminal count " + std::to_string(terms.size());
  }
  ok = ok && log_ok;
  report(5, "global structure of doubling / rotation / logistic", ok, detail);
}

// Criterion 6: shadowing bounds for the doubling map.
void criterion_6() {
  auto start = std::chrono::steady_clock::now();
  SystemDef dbl = builtin("doubling");
  const double delta = 0.01;
  int branch_fail = 0, search_fail = 0;
  double worst_branch = 0.0, worst_search = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PseudoOrbit po = generate_pseudo_orbit(dbl, {0.37, 0.0}, delta, 40, seed,
                                           PseudoOrbitKind::perturbed_orbit);
    double dev = orbit_deviation(dbl, inverse_branch_shadow(dbl, po), po);
    worst_branch = std::max(worst_branch, dev);
    if (dev > 2.0 * delta + 1e-9) ++branch_fail;
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PseudoOrbit po = generate_pseudo_orbit(dbl, {0.37, 0.0}, delta, 8, seed,
                                           PseudoOrbitKind::perturbed_orbit);
    ShadowingResult res = shadowing_search(dbl, po, 0.1, 14);
    if (!res.found || res.deviation > 2.5 * delta)
      ++search_fail;
    else
      worst_search = std::max(worst_search, res.deviation);
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  bool ok = branch_fail == 0 && search_fail == 0 && secs < 60.0;
  report(6, "doubling-map shadowing bounds", ok,
         "worst pullback " + std::to_string(worst_branch) + ", worst search " +
             std::to_string(worst_search) + ", " + std::to_string(secs) + " s");
}

// Criterion 7: rotations fail shadowing under drifting walks.
void criterion_7() {
  SystemDef rot = builtin("rotation", {{"alpha", std::sqrt(2.0) - 1.0}});
  int failures = 0, drift_confirmed = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PseudoOrbit po = generate_pseudo_orbit(rot, {0.2, 0.0}, 0.01, 200, seed,
                                           PseudoOrbitKind::random_walk);
    double lo = 0.0, hi = 0.0, acc = 0.0;
    for (std::size_t i = 1; i < po.points.size(); ++i) {
      double step = po.points[i][0] - evaluate(rot, po.points[i - 1])[0];
      step -= std::round(step);
      acc += step;
      lo = std::min(lo, acc);
      hi = std::max(hi, acc);
    }
    if ((hi - lo) / 2.0 > 0.05) ++drift_confirmed;
    if (!shadowing_search(rot, po, 0.05, 11).found) ++failures;
  }
  bool ok = failures >= 45 && drift_confirmed >= 45;
  report(7, "rotation negative control", ok,
         std::to_string(failures) + "/50 unshadowed, drift confirmed in " +
             std::to_string(drift_confirmed));
}

// Criterion 8: chain-continuity signature and the odometer-like cascade.
void criterion_8() {
  std::vector<std::pair<int, int>> ladder{{8, 4}, {16, 4}, {16, 8}, {32, 8}};
  SystemDef ns = builtin("north_south");
  CCReport nsr = cc_report(ns, subdivide(ns.domain, 6), ladder);
  SystemDef rot = builtin("rotation", {{"alpha", std::sqrt(2.0) - 1.0}});
  CCReport rr = cc_report(rot, subdivide(rot.domain, 6), ladder);

  SystemDef feig = builtin("logistic", {{"r", 3.569946}});
  std::vector<ChainDecomposition> decs;
  for (int d : {6, 7, 8, 9, 10, 11, 12}) decs.push_back(decompose(feig, d, 0.0));
  TerminalClassification cls =
      classify_terminal(track_terminal_across_depths(decs));
  std::string periods;
  for (auto p : cls.period_sequence)
    periods += (periods.empty() ? "" : ",") + std::to_string(p);

  bool ok = nsr.cc_fraction >= 0.9 && rr.cc_fraction == 0.0 &&
            cls.verdict == TerminalVerdict::odometer_like;
  report(8, "chain-continuity fractions and odometer cascade", ok,
         "cc " + std::to_string(nsr.cc_fraction) + " vs " +
             std::to_string(rr.cc_fraction) + ", periods " + periods);
}

// Criterion 9: determinism and the config echo round-trip.
void criterion_9() {
  const char* doc = R"(
depths = [4, 5, 6]
analyses = ["components", "basins", "shadowing", "finite_oracle"]
seed = 7

[system]
type = "builtin"
name = "north_south"

[finite_oracle]
n = 4
)";
  AnalysisConfig cfg = parse_config(doc);
  PipelineResult a = run_pipeline_full(cfg);
  PipelineResult b = run_pipeline_full(cfg);
  bool ok = emit_json(a.report) == emit_json(b.report);
  ok = ok && a.dec && b.dec && emit_dot(*a.dec) == emit_dot(*b.dec);
  ok = ok && emit_csv(*a.dec, a.basins ? &*a.basins : nullptr, nullptr) ==
                 emit_csv(*b.dec, b.basins ? &*b.basins : nullptr, nullptr);
  ok = ok && config_from_json(a.report["config"]) == cfg;
  ok = ok && !a.had_errors;
  report(9, "determinism and config round-trip", ok, "");
}

}  // namespace

int main() {
  criteria_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
