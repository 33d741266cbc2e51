#include "chainrec/report.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "chainrec/finite_oracle.hpp"

namespace chainrec {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json value_to_json(const ConfigValue& v) {
  if (auto* i = std::get_if<std::int64_t>(&v.v)) return *i;
  if (auto* d = std::get_if<double>(&v.v)) return *d;
  if (auto* b = std::get_if<bool>(&v.v)) return *b;
  if (auto* s = std::get_if<std::string>(&v.v)) return *s;
  ordered_json arr = ordered_json::array();
  for (const auto& e : std::get<ConfigArray>(v.v)) arr.push_back(value_to_json(e));
  return arr;
}

ConfigValue value_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return ConfigValue{j.get<std::int64_t>()};
  if (j.is_number_float()) return ConfigValue{j.get<double>()};
  if (j.is_boolean()) return ConfigValue{j.get<bool>()};
  if (j.is_string()) return ConfigValue{j.get<std::string>()};
  if (j.is_array()) {
    ConfigArray arr;
    for (const auto& e : j) arr.push_back(value_from_json(e));
    return ConfigValue{arr};
  }
  throw ConfigError("config echo: unsupported JSON value");
}

}  // namespace

ordered_json config_to_json(const AnalysisConfig& cfg) {
  ordered_json j;
  ordered_json sys = ordered_json::object();
  for (const auto& [k, v] : cfg.system_fragment) sys[k] = value_to_json(v);
  j["system"] = sys;
  j["depths"] = cfg.depths;
  j["delta"] = cfg.delta;
  j["rigor_margin"] = cfg.rigor_margin;
  j["analyses"] = cfg.analyses;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  j["shadowing"] = {{"epsilon", cfg.shadowing.epsilon},
                    {"delta", cfg.shadowing.delta},
                    {"length", cfg.shadowing.length},
                    {"trials", cfg.shadowing.trials},
                    {"search_depth", cfg.shadowing.search_depth}};
  ordered_json ladder = ordered_json::array();
  for (const auto& [a, b] : cfg.cc.ladder) ladder.push_back({a, b});
  j["cc"] = {{"ladder", ladder}, {"horizon", cfg.cc.horizon}};
  j["coverage"] = {{"j", cfg.coverage.w_j},
                   {"m", cfg.coverage.w_m},
                   {"horizon", cfg.coverage.w_horizon},
                   {"samples", cfg.coverage.samples}};
  j["finite_oracle"] = {{"n", cfg.finite_oracle.n},
                        {"random_count", cfg.finite_oracle.random_count},
                        {"random_n", cfg.finite_oracle.random_n}};
  return j;
}

AnalysisConfig config_from_json(const ordered_json& j) {
  AnalysisConfig cfg;
  for (const auto& [k, v] : j.at("system").items())
    cfg.system_fragment[k] = value_from_json(v);
  cfg.depths = j.at("depths").get<std::vector<int>>();
  cfg.delta = j.at("delta").get<double>();
  cfg.rigor_margin = j.at("rigor_margin").get<double>();
  cfg.analyses = j.at("analyses").get<std::vector<std::string>>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.output_dir = j.at("output_dir").get<std::string>();
  const auto& sh = j.at("shadowing");
  cfg.shadowing = {sh.at("epsilon").get<double>(), sh.at("delta").get<double>(),
                   sh.at("length").get<int>(), sh.at("trials").get<int>(),
                   sh.at("search_depth").get<int>()};
  cfg.cc.ladder.clear();
  for (const auto& e : j.at("cc").at("ladder"))
    cfg.cc.ladder.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  cfg.cc.horizon = j.at("cc").at("horizon").get<int>();
  const auto& cov = j.at("coverage");
  cfg.coverage = {cov.at("j").get<int>(), cov.at("m").get<int>(),
                  cov.at("horizon").get<int>(), cov.at("samples").get<int>()};
  const auto& fo = j.at("finite_oracle");
  cfg.finite_oracle = {fo.at("n").get<int>(), fo.at("random_count").get<int>(),
                       fo.at("random_n").get<int>()};
  return cfg;
}

namespace {

bool wants(const AnalysisConfig& cfg, const std::string& a) {
  return std::find(cfg.analyses.begin(), cfg.analyses.end(), a) !=
         cfg.analyses.end();
}

ordered_json components_block(const AnalysisConfig& cfg,
                              const std::vector<ChainDecomposition>& decs) {
  const ChainDecomposition& dec = decs.back();
  ordered_json block;
  block["depth"] = dec.graph.grid.depth;
  block["delta"] = dec.graph.params.delta;
  block["box_count"] = dec.graph.node_count();
  block["component_count"] = dec.components.size();
  std::size_t cyclic = 0;
  for (bool c : dec.has_cycle) cyclic += c;
  block["cyclic_component_count"] = cyclic;
  block["recurrent_box_count"] = chain_recurrent_boxes(dec).size();
  ordered_json terminals = ordered_json::array();
  for (ComponentId c : terminal_components(dec)) {
    ComponentProfile p = profile_component(dec, c);
    terminals.push_back({{"id", p.id},
                         {"box_count", p.box_count},
                         {"period", p.period}});
  }
  block["terminals"] = terminals;
  if (decs.size() >= 3) {
    auto profiles = track_terminal_across_depths(decs);
    TerminalClassification tc = classify_terminal(profiles);
    block["classification"] = {{"verdict", to_string(tc.verdict)},
                               {"period_sequence", tc.period_sequence},
                               {"measure_sequence", tc.measure_sequence}};
  }
  return block;
}

ordered_json basins_block(const ChainDecomposition& dec,
                          const BasinReport& basins) {
  ordered_json block;
  block["v_fraction"] = basins.v_fraction;
  std::uint64_t ambiguous = 0;
  for (ComponentId a : basins.assignment) ambiguous += (a == kAmbiguous);
  block["ambiguous_boxes"] = ambiguous;
  ordered_json sizes = ordered_json::array();
  for (ComponentId c = 0; c < basins.per_component_basin_size.size(); ++c)
    if (dec.terminal[c])
      sizes.push_back(
          {{"component", c}, {"boxes", basins.per_component_basin_size[c]}});
  block["per_component_basin_size"] = sizes;
  return block;
}

ordered_json shadowing_block(const AnalysisConfig& cfg, const SystemDef& sys) {
  const ShadowingConfig& sc = cfg.shadowing;
  ordered_json block;
  block["epsilon"] = sc.epsilon;
  block["delta"] = sc.delta;
  block["length"] = sc.length;
  block["trials"] = sc.trials;
  block["search_depth"] = sc.search_depth;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int found = 0;
  double worst_dev = 0.0;
  for (int t = 0; t < sc.trials; ++t) {
    Point x0{0.0, 0.0};
    for (int a = 0; a < sys.domain.dim(); ++a)
      x0[a] = sys.domain.lo[a] + sys.domain.span(a) * unif(rng);
    PseudoOrbit po = generate_pseudo_orbit(
        sys, x0, sc.delta, sc.length, rng(),
        t % 2 ? PseudoOrbitKind::spliced : PseudoOrbitKind::perturbed_orbit);
    ShadowingResult res = shadowing_search(sys, po, sc.epsilon, sc.search_depth);
    if (res.found) {
      ++found;
      worst_dev = std::max(worst_dev, res.deviation);
    }
  }
  block["shadowed_trials"] = found;
  block["worst_found_deviation"] = worst_dev;

  ModulusParams mp;
  mp.trials = sc.trials;
  mp.length = sc.length;
  mp.search_depth = sc.search_depth;
  mp.seed = cfg.seed;
  auto modulus = estimate_shadowing_modulus(sys, sc.epsilon, mp);
  block["empirical"] = true;
  if (modulus)
    block["accepted_delta"] = *modulus;
  else
    block["accepted_delta"] = nullptr;
  return block;
}

ordered_json cc_block(const AnalysisConfig& cfg, const CCReport& rep) {
  ordered_json block;
  ordered_json ladder = ordered_json::array();
  for (const auto& [j, l] : rep.ladder) ladder.push_back({j, l});
  block["ladder"] = ladder;
  block["cc_fraction"] = rep.cc_fraction;
  return block;
}

ordered_json finite_oracle_block(const AnalysisConfig& cfg) {
  const FiniteOracleConfig& fc = cfg.finite_oracle;
  ordered_json block;
  bool lemma21 = true, lemma11 = true, maximality = true;
  std::uint64_t checked = 0;
  for (int n = 1; n <= fc.n; ++n) {
    for (const FiniteSystem& fs : enumerate_functional(n)) {
      lemma21 = lemma21 && verify_lemma_2_1(fs);
      lemma11 = lemma11 && verify_lemma_1_1(fs);
      maximality = maximality && verify_maximality(fs);
      ++checked;
    }
  }
  for (int t = 0; t < fc.random_count; ++t) {
    FiniteSystem fs = random_total_relation(fc.random_n, cfg.seed + t);
    lemma21 = lemma21 && verify_lemma_2_1(fs);
    lemma11 = lemma11 && verify_lemma_1_1(fs);
    maximality = maximality && verify_maximality(fs);
    ++checked;
  }
  block["n"] = fc.n;
  block["random_count"] = fc.random_count;
  block["random_n"] = fc.random_n;
  block["systems_checked"] = checked;
  block["lemma_2_1"] = lemma21;
  block["lemma_1_1"] = lemma11;
  block["maximality"] = maximality;
  return block;
}

}  // namespace

PipelineResult run_pipeline_full(const AnalysisConfig& cfg) {
  PipelineResult out;
  ordered_json& report = out.report;
  report["version"] = kReportSchemaVersion;
  report["tool_version"] = kToolVersion;
  report["config"] = config_to_json(cfg);
  ordered_json results = ordered_json::object();
  ordered_json errors = ordered_json::array();

  auto guard = [&](const std::string& name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back({{"analysis", name}, {"message", e.what()}});
      out.had_errors = true;
    }
  };

  bool needs_graph = wants(cfg, "components") || wants(cfg, "basins");
  if (needs_graph || wants(cfg, "coverage_study") || wants(cfg, "shadowing") ||
      wants(cfg, "cc_report")) {
    SystemDef sys = parse_system(cfg.system_fragment);

    std::vector<ChainDecomposition> decs;
    if (needs_graph) {
      guard("components", [&] {
        for (int depth : cfg.depths) {
          Grid grid = subdivide(sys.domain, depth);
          ChainGraphParams gp;
          gp.delta = cfg.delta < 0.0 ? grid.width(0) : cfg.delta;
          gp.rigor_margin = cfg.rigor_margin;
          decs.push_back(scc_decompose(build_chain_graph(sys, grid, gp)));
        }
        out.dec = decs.back();
      });
    }
    if (wants(cfg, "components") && !decs.empty())
      guard("components", [&] { results["components"] = components_block(cfg, decs); });
    if (wants(cfg, "basins") && !decs.empty())
      guard("basins", [&] {
        out.basins = terminal_basin_partition(decs.back());
        results["basins"] = basins_block(decs.back(), *out.basins);
      });
    if (wants(cfg, "coverage_study"))
      guard("coverage_study", [&] {
        CoverageParams cp;
        cp.delta = cfg.delta;
        cp.rigor_margin = cfg.rigor_margin;
        cp.w_j = cfg.coverage.w_j;
        cp.w_m = cfg.coverage.w_m;
        cp.w_horizon = cfg.coverage.w_horizon;
        cp.samples = cfg.coverage.samples;
        cp.seed = cfg.seed;
        auto rows = coverage_study(sys, cfg.depths, cp);
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
          arr.push_back({{"depth", r.depth},
                         {"v_fraction", r.v_fraction},
                         {"w_sample_fraction", r.w_sample_fraction}});
        results["coverage"] = arr;
      });
    if (wants(cfg, "shadowing"))
      guard("shadowing", [&] { results["shadowing"] = shadowing_block(cfg, sys); });
    if (wants(cfg, "cc_report"))
      guard("cc_report", [&] {
        Grid grid = subdivide(sys.domain, cfg.depths.back());
        out.cc = cc_report(sys, grid, cfg.cc.ladder, cfg.cc.horizon);
        results["cc"] = cc_block(cfg, *out.cc);
      });
  }
  if (wants(cfg, "finite_oracle"))
    guard("finite_oracle", [&] { results["finite_oracle"] = finite_oracle_block(cfg); });

  if (!errors.empty()) results["errors"] = errors;
  report["results"] = results;
  report["provenance"] = {{"tool_version", kToolVersion}, {"seed", cfg.seed}};
  return out;
}

ordered_json run_pipeline(const AnalysisConfig& cfg) {
  return run_pipeline_full(cfg).report;
}

std::string emit_dot(const ChainDecomposition& dec) {
  std::ostringstream os;
  os << "digraph condensation {\n";
  for (ComponentId c = 0; c < dec.components.size(); ++c) {
    ComponentProfile p = profile_component(dec, c);
    os << "  C" << c << " [label=\"C" << c << " [n=" << p.box_count
       << ", p=" << p.period << "]\"";
    if (dec.terminal[c]) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (ComponentId c = 0; c < dec.components.size(); ++c)
    for (ComponentId s : dec.dag[c]) os << "  C" << c << " -> C" << s << ";\n";
  os << "}\n";
  return os.str();
}

std::string emit_csv(const ChainDecomposition& dec, const BasinReport* basins,
                     const CCReport* cc) {
  std::ostringstream os;
  os << "id,center_x,center_y,component,terminal,basin,cc\n";
  const Grid& grid = dec.graph.grid;
  os.precision(17);
  for (BoxId b = 0; b < grid.count; ++b) {
    Point c = grid.center(b);
    ComponentId comp = dec.scc_of[b];
    os << b << ',' << c[0] << ',';
    if (grid.domain.dim() == 2) os << c[1];
    os << ',' << comp << ',' << (dec.terminal[comp] ? 1 : 0) << ',';
    if (basins) {
      if (basins->assignment[b] == kAmbiguous)
        os << "ambiguous";
      else
        os << basins->assignment[b];
    }
    os << ',';
    if (cc)
      for (bool m : cc->membership[b]) os << (m ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

std::string emit_json(const ordered_json& report) { return report.dump(2) + "\n"; }

}  // namespace chainrec
