#include <doctest.h>

#include <sstream>

#include "chainrec/report.hpp"

using namespace chainrec;
using nlohmann::ordered_json;

namespace {

const char* kMinimalDoc = R"(
depth = 5
analyses = ["components"]

[system]
type = "builtin"
name = "doubling"
)";

}  // namespace

TEST_CASE("minimal document parses with defaults") {
  AnalysisConfig cfg = parse_config(kMinimalDoc);
  CHECK(cfg.depths == std::vector<int>{5});
  CHECK(cfg.delta == -1.0);  // resolved to one box width at analysis time
  CHECK(cfg.analyses == std::vector<std::string>{"components"});
  CHECK(cfg.seed == 0);
  CHECK(cfg.output_dir == "out");
  SystemDef sys = parse_system(cfg.system_fragment);
  CHECK(sys.name == "doubling");
}

TEST_CASE("unknown keys are rejected by name") {
  std::string doc = "deltaa = 0.1\n";
  doc += kMinimalDoc;
  try {
    parse_config(doc);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("deltaa") != std::string::npos);
  }
}

TEST_CASE("depths must be increasing") {
  const char* doc = R"(
depths = [6, 5]
analyses = ["coverage_study"]

[system]
type = "builtin"
name = "doubling"
)";
  try {
    parse_config(doc);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("increasing") != std::string::npos);
  }
}

TEST_CASE("config validation errors") {
  CHECK_THROWS_AS(parse_config("depth = 5\n"), ConfigError);  // no analyses
  CHECK_THROWS_AS(parse_config("analyses = [\"components\"]\n[system]\ntype = \"builtin\"\nname = \"doubling\"\n"),
                  ConfigError);  // no depth
  CHECK_THROWS_AS(parse_config("depth = 5\ndepths = [5]\nanalyses = [\"components\"]\n[system]\ntype = \"builtin\"\nname = \"doubling\"\n"),
                  ConfigError);  // both forms
  CHECK_THROWS_AS(parse_config("depth = 5\nanalyses = [\"bogus\"]\n[system]\ntype = \"builtin\"\nname = \"doubling\"\n"),
                  ConfigError);  // unknown analysis
  CHECK_THROWS_AS(parse_config("depth = 5\nanalyses = [\"components\"]\n"),
                  ConfigError);  // missing [system]
}

TEST_CASE("syntax errors carry line information") {
  try {
    parse_config("depth = 5\nanalyses = [\"components\"\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("document-level parsing details") {
  ConfigDocument doc = parse_config_document(
      "a = 1  # comment\nb = \"x # not a comment\"\n[s]\nc = [1, [2, 3]]\nd = true\ne = 1.5\n");
  CHECK(doc.at("").at("a").as_int() == 1);
  CHECK(doc.at("").at("b").as_string() == "x # not a comment");
  CHECK(doc.at("s").at("c").as_array().size() == 2);
  CHECK(doc.at("s").at("d").as_bool());
  CHECK(doc.at("s").at("e").as_double() == doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_config_document("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_document("= 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_document("[unclosed\n"), ConfigError);
}

TEST_CASE("config echo round-trips") {
  const char* doc = R"(
depths = [4, 5, 6]
delta = 0.02
analyses = ["components", "basins", "shadowing"]
seed = 9
output_dir = "reports"

[system]
type = "builtin"
name = "logistic"
r = 3.2

[shadowing]
epsilon = 0.2
length = 12
)";
  AnalysisConfig cfg = parse_config(doc);
  AnalysisConfig back = config_from_json(config_to_json(cfg));
  CHECK(back == cfg);
}

TEST_CASE("empty-analysis report shape") {
  AnalysisConfig cfg = parse_config(kMinimalDoc);
  cfg.analyses.clear();  // simulate a no-op pipeline
  ordered_json rep = run_pipeline(cfg);
  CHECK(rep["version"] == kReportSchemaVersion);
  CHECK(rep["results"].is_object());
  CHECK(rep["results"].empty());
  CHECK(config_from_json(rep["config"]) == cfg);
}

TEST_CASE("pipeline report for doubling components and basins") {
  AnalysisConfig cfg = parse_config(R"(
depth = 5
delta = 0.0
analyses = ["components", "basins"]

[system]
type = "builtin"
name = "doubling"
)");
  ordered_json rep = run_pipeline(cfg);
  auto& comp = rep["results"]["components"];
  CHECK(comp["component_count"] == 1);
  CHECK(comp["terminals"].size() == 1);
  CHECK(rep["results"]["basins"]["v_fraction"] == 1.0);
  CHECK(!rep["results"].contains("errors"));
}

TEST_CASE("pipeline report for north_south components") {
  AnalysisConfig cfg = parse_config(R"(
depth = 6
analyses = ["components"]

[system]
type = "builtin"
name = "north_south"
)");
  ordered_json rep = run_pipeline(cfg);
  auto& comp = rep["results"]["components"];
  // Attractor seam component, repeller component, and one delta-self-loop
  // singleton on each flank of the repeller where the per-step motion drops
  // below the default delta of one box width.
  CHECK(comp["cyclic_component_count"] == 4);
  REQUIRE(comp["terminals"].size() == 1);
  CHECK(comp["terminals"][0]["period"] == 1);
}

TEST_CASE("finite oracle analysis block is all green") {
  AnalysisConfig cfg = parse_config(R"(
depth = 2
analyses = ["finite_oracle"]

[system]
type = "builtin"
name = "doubling"

[finite_oracle]
n = 5
)");
  ordered_json rep = run_pipeline(cfg);
  auto& block = rep["results"]["finite_oracle"];
  CHECK(block["lemma_2_1"] == true);
  CHECK(block["lemma_1_1"] == true);
  CHECK(block["maximality"] == true);
  CHECK(block["systems_checked"].get<int>() >= 3125);
}

TEST_CASE("dot output shape") {
  SystemDef ns = builtin("north_south");
  Grid g = subdivide(ns.domain, 5);
  ChainDecomposition dec =
      scc_decompose(build_chain_graph(ns, g, {0.0, 0.0}));
  std::string dot = emit_dot(dec);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);

  SystemDef dbl = builtin("doubling");
  Grid gd = subdivide(dbl.domain, 4);
  ChainDecomposition dd =
      scc_decompose(build_chain_graph(dbl, gd, {0.0, 0.0}));
  std::string single = emit_dot(dd);
  CHECK(single.find("->") == std::string::npos);  // one node, no edges
}

TEST_CASE("csv has a fixed header and one row per box") {
  SystemDef dbl = builtin("doubling");
  Grid g = subdivide(dbl.domain, 4);
  ChainDecomposition dec =
      scc_decompose(build_chain_graph(dbl, g, {0.0, 0.0}));
  BasinReport basins = terminal_basin_partition(dec);
  std::string csv = emit_csv(dec, &basins, nullptr);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "id,center_x,center_y,component,terminal,basin,cc");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 16);
}

TEST_CASE("reports are deterministic") {
  AnalysisConfig cfg = parse_config(R"(
depth = 5
analyses = ["components", "basins", "shadowing"]
seed = 3

[system]
type = "builtin"
name = "doubling"
)");
  std::string a = emit_json(run_pipeline(cfg));
  std::string b = emit_json(run_pipeline(cfg));
  CHECK(a == b);
}

TEST_CASE("classification block appears with three or more depths") {
  AnalysisConfig cfg = parse_config(R"(
depths = [4, 5, 6]
analyses = ["components"]

[system]
type = "builtin"
name = "north_south"
)");
  ordered_json rep = run_pipeline(cfg);
  CHECK(rep["results"]["components"]["classification"]["verdict"] ==
        "periodic_like");
}
