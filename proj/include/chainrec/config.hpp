#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chainrec/systems.hpp"

// TOML-style configuration: top-level key/value pairs plus one section per
// analysis. One format only; unknown keys are rejected.

namespace chainrec {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigValue;
using ConfigArray = std::vector<ConfigValue>;
struct ConfigValue {
  std::variant<std::int64_t, double, bool, std::string, ConfigArray> v;

  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_number() const { return is_int() || std::holds_alternative<double>(v); }
  std::int64_t as_int() const;
  double as_double() const;
  bool as_bool() const;
  const std::string& as_string() const;
  const ConfigArray& as_array() const;

  friend bool operator==(const ConfigValue& a, const ConfigValue& b) {
    return a.v == b.v;
  }
};

using ConfigTable = std::map<std::string, ConfigValue>;
// section name ("" = top level) -> key -> value
using ConfigDocument = std::map<std::string, ConfigTable>;

// Syntax errors carry line numbers.
ConfigDocument parse_config_document(const std::string& text);

// System fragment: {type, name?, params?, breaks?, coeffs?, lipschitz?}.
SystemDef parse_system(const ConfigTable& fragment);

struct ShadowingConfig {
  double epsilon = 0.1;
  double delta = 0.01;
  int length = 8;
  int trials = 10;
  int search_depth = 14;

  bool operator==(const ShadowingConfig&) const = default;
};

struct CCConfig {
  std::vector<std::pair<int, int>> ladder = {{8, 4}, {16, 4}, {16, 8}, {32, 8}};
  int horizon = -1;  // < 0: 50*j

  bool operator==(const CCConfig&) const = default;
};

struct CoverageConfig {
  int w_j = 4;
  int w_m = 100;
  int w_horizon = -1;  // < 0: 10 * 2^depth
  int samples = 100;

  bool operator==(const CoverageConfig&) const = default;
};

struct FiniteOracleConfig {
  int n = 5;
  int random_count = 0;
  int random_n = 8;

  bool operator==(const FiniteOracleConfig&) const = default;
};

struct AnalysisConfig {
  ConfigTable system_fragment;
  std::vector<int> depths;  // single-depth runs hold one entry
  double delta = -1.0;      // < 0: one box width at the configured depth
  double rigor_margin = 0.0;
  std::vector<std::string> analyses;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  ShadowingConfig shadowing;
  CCConfig cc;
  CoverageConfig coverage;
  FiniteOracleConfig finite_oracle;

  bool operator==(const AnalysisConfig&) const;
};

// Validates, fills defaults, rejects unknown keys and bad combinations.
AnalysisConfig parse_config(const std::string& text);

}  // namespace chainrec
