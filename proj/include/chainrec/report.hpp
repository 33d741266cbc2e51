#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "chainrec/chain_graph.hpp"
#include "chainrec/config.hpp"
#include "chainrec/limits_basins.hpp"
#include "chainrec/shadowing.hpp"

// Pipeline orchestration and serialization (JSON / DOT / CSV). All outputs
// are deterministic for a fixed config.

namespace chainrec {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct PipelineResult {
  nlohmann::ordered_json report;
  std::optional<ChainDecomposition> dec;  // at the finest configured depth
  std::optional<BasinReport> basins;
  std::optional<CCReport> cc;
  bool had_errors = false;
};

// Runs the requested analyses in dependency order; per-analysis failures
// are recorded under results.errors and do not abort independent analyses.
PipelineResult run_pipeline_full(const AnalysisConfig& cfg);

// JSON document only: {version, config, results:{...}}.
nlohmann::ordered_json run_pipeline(const AnalysisConfig& cfg);

nlohmann::ordered_json config_to_json(const AnalysisConfig& cfg);
AnalysisConfig config_from_json(const nlohmann::ordered_json& j);

// Condensation digraph, one node per component, terminal ones doublecircled.
std::string emit_dot(const ChainDecomposition& dec);

// One row per box: id, center coords, component, terminal flag, basin
// assignment, cc flags. Header row fixed.
std::string emit_csv(const ChainDecomposition& dec, const BasinReport* basins,
                     const CCReport* cc);

std::string emit_json(const nlohmann::ordered_json& report);

}  // namespace chainrec
