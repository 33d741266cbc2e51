// chainrec command line: analyze a config, sweep the finite-system
// lemmas, or run a one-off shadowing experiment.
//
// Exit codes: 0 = all analyses completed, 2 = validation error,
// 3 = analysis error.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "chainrec/finite_oracle.hpp"
#include "chainrec/report.hpp"

namespace fs = std::filesystem;
using namespace chainrec;

namespace {

int run_analyze(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file: " << config_path << "\n";
    return 2;
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  AnalysisConfig cfg;
  try {
    cfg = parse_config(text);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  PipelineResult result = run_pipeline_full(cfg);
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  fs::create_directories(cfg.output_dir);
  std::ofstream(fs::path(cfg.output_dir) / "report.json")
      << emit_json(result.report);
  if (result.dec) {
    std::ofstream(fs::path(cfg.output_dir) / "condensation.dot")
        << emit_dot(*result.dec);
    std::ofstream(fs::path(cfg.output_dir) / "boxes.csv")
        << emit_csv(*result.dec,
                    result.basins ? &*result.basins : nullptr,
                    result.cc ? &*result.cc : nullptr);
  }
  // Wall time goes to the console only, so report files stay byte-stable.
  std::cout << "wrote " << cfg.output_dir << "/report.json ("
            << elapsed.count() << " ms)\n";
  return result.had_errors ? 3 : 0;
}

int run_verify_finite(int n, int random_count, std::uint64_t seed) {
  if (n < 1 || n > 7) {
    std::cerr << "error: --n must lie in [1,7]\n";
    return 2;
  }
  bool ok = true;
  std::uint64_t checked = 0;
  for (int k = 1; k <= n; ++k)
    for (const FiniteSystem& fsys : enumerate_functional(k)) {
      ok = ok && verify_lemma_2_1(fsys) && verify_lemma_1_1(fsys) &&
           verify_maximality(fsys);
      ++checked;
    }
  for (int t = 0; t < random_count; ++t) {
    FiniteSystem fsys = random_total_relation(8, seed + t);
    ok = ok && verify_lemma_2_1(fsys) && verify_lemma_1_1(fsys) &&
         verify_maximality(fsys);
    ++checked;
  }
  std::cout << "checked " << checked << " finite systems: "
            << (ok ? "all lemmas hold" : "FAILURE") << "\n";
  return ok ? 0 : 3;
}

int run_shadow(const std::string& system, double delta, double epsilon,
               int length, std::uint64_t seed, int depth) {
  SystemDef sys;
  try {
    sys = builtin(system);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  PseudoOrbit po = generate_pseudo_orbit(sys, {0.3, 0.3}, delta, length, seed,
                                         PseudoOrbitKind::perturbed_orbit);
  ShadowingResult res = shadowing_search(sys, po, epsilon, depth);
  nlohmann::ordered_json j;
  j["system"] = system;
  j["delta"] = delta;
  j["epsilon"] = epsilon;
  j["length"] = length;
  j["seed"] = seed;
  j["search_depth"] = depth;
  j["found"] = res.found;
  if (res.found) {
    j["deviation"] = res.deviation;
    j["witness"] = (*res.witness)[0];
  } else {
    j["note"] = "no witness at search depth " + std::to_string(depth);
  }
  if (sys.name == "doubling" || sys.name == "tent") {
    Point w = inverse_branch_shadow(sys, po);
    j["inverse_branch_deviation"] = orbit_deviation(sys, w, po);
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chain recurrence analysis over box grids"};
  app.require_subcommand(1);

  std::string config_path;
  auto* analyze = app.add_subcommand("analyze", "run a config-driven analysis");
  analyze->add_option("config", config_path, "path to config file")->required();

  int n = 5, random_count = 0;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify-finite", "brute-force lemma sweep");
  verify->add_option("--n", n, "max functional system size");
  verify->add_option("--random", random_count, "random total relations (n=8)");
  verify->add_option("--seed", seed, "base seed for random relations");

  std::string system = "doubling";
  double delta = 0.01, epsilon = 0.1;
  int length = 8, depth = 14;
  std::uint64_t sseed = 0;
  auto* shadow = app.add_subcommand("shadow", "one-off shadowing experiment");
  shadow->add_option("--system", system, "builtin system name")->required();
  shadow->add_option("--delta", delta, "pseudo-orbit delta")->required();
  shadow->add_option("--epsilon", epsilon, "shadowing epsilon")->required();
  shadow->add_option("--length", length, "pseudo-orbit length")->required();
  shadow->add_option("--seed", sseed, "noise seed")->required();
  shadow->add_option("--depth", depth, "candidate grid depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(analyze)) return run_analyze(config_path);
    if (app.got_subcommand(verify)) return run_verify_finite(n, random_count, seed);
    if (app.got_subcommand(shadow))
      return run_shadow(system, delta, epsilon, length, sseed, depth);
  } catch (const std::exception& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
