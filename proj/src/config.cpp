#include "chainrec/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>

namespace chainrec {

std::int64_t ConfigValue::as_int() const {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw ConfigError("expected an integer value");
}

double ConfigValue::as_double() const {
  if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&v)) return *d;
  throw ConfigError("expected a numeric value");
}

bool ConfigValue::as_bool() const {
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw ConfigError("expected a boolean value");
}

const std::string& ConfigValue::as_string() const {
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  throw ConfigError("expected a string value");
}

const ConfigArray& ConfigValue::as_array() const {
  if (auto* a = std::get_if<ConfigArray>(&v)) return *a;
  throw ConfigError("expected an array value");
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int line;
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("line " + std::to_string(line) + ", column " +
                      std::to_string(pos + 1) + ": " + msg);
  }
};

ConfigValue parse_value(Cursor& c);

ConfigValue parse_scalar(Cursor& c) {
  c.skip_ws();
  if (c.pos >= c.s.size()) c.fail("missing value");
  char ch = c.s[c.pos];
  if (ch == '"') {
    std::string out;
    ++c.pos;
    while (c.pos < c.s.size() && c.s[c.pos] != '"') out += c.s[c.pos++];
    if (c.pos >= c.s.size()) c.fail("unterminated string");
    ++c.pos;
    return ConfigValue{out};
  }
  std::size_t start = c.pos;
  while (c.pos < c.s.size() && !std::strchr(",]# \t", c.s[c.pos])) ++c.pos;
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok == "true") return ConfigValue{true};
  if (tok == "false") return ConfigValue{false};
  {
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), i);
    if (ec == std::errc() && p == tok.data() + tok.size())
      return ConfigValue{i};
  }
  try {
    std::size_t used = 0;
    double d = std::stod(tok, &used);
    if (used == tok.size()) return ConfigValue{d};
  } catch (...) {
  }
  c.fail("cannot parse value '" + tok + "'");
}

ConfigValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.pos < c.s.size() && c.s[c.pos] == '[') {
    ++c.pos;
    ConfigArray arr;
    c.skip_ws();
    if (c.pos < c.s.size() && c.s[c.pos] == ']') {
      ++c.pos;
      return ConfigValue{arr};
    }
    while (true) {
      arr.push_back(parse_value(c));
      c.skip_ws();
      if (c.pos >= c.s.size()) c.fail("unterminated array");
      if (c.s[c.pos] == ',') { ++c.pos; continue; }
      if (c.s[c.pos] == ']') { ++c.pos; break; }
      c.fail("expected ',' or ']' in array");
    }
    return ConfigValue{arr};
  }
  return parse_scalar(c);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigDocument parse_config_document(const std::string& text) {
  ConfigDocument doc;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) +
                          ": empty section name");
      doc[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    std::string rhs = trim(line.substr(eq + 1));
    Cursor c{rhs, 0, lineno};
    ConfigValue val = parse_value(c);
    c.skip_ws();
    if (c.pos != rhs.size()) c.fail("trailing characters after value");
    if (doc[section].count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        key + "'");
    doc[section][key] = std::move(val);
  }
  return doc;
}

namespace {

void reject_unknown(const ConfigTable& table, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& [k, v] : table)
    if (!allowed.count(k))
      throw ConfigError(where + ": unknown key '" + k + "'");
}

}  // namespace

SystemDef parse_system(const ConfigTable& fragment) {
  auto it = fragment.find("type");
  if (it == fragment.end())
    throw ConfigError("[system]: missing key 'type'");
  const std::string& type = it->second.as_string();
  if (type == "builtin") {
    std::map<std::string, double> params;
    std::string name;
    for (const auto& [k, v] : fragment) {
      if (k == "type") continue;
      if (k == "name")
        name = v.as_string();
      else if (v.is_number())
        params[k] = v.as_double();
      else
        throw ConfigError("[system]: parameter '" + k + "' must be numeric");
    }
    if (name.empty()) throw ConfigError("[system]: missing key 'name'");
    try {
      return builtin(name, params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[system]: ") + e.what());
    }
  }
  if (type == "piecewise") {
    reject_unknown(fragment, "[system]",
                   {"type", "breaks", "coeffs", "lipschitz"});
    PiecewiseDef def;
    for (const std::string required : {"breaks", "coeffs", "lipschitz"})
      if (!fragment.count(required))
        throw ConfigError("[system]: piecewise needs key '" + required + "'");
    for (const auto& v : fragment.at("breaks").as_array())
      def.breaks.push_back(v.as_double());
    for (const auto& piece : fragment.at("coeffs").as_array()) {
      def.coeffs.emplace_back();
      for (const auto& v : piece.as_array())
        def.coeffs.back().push_back(v.as_double());
    }
    def.lipschitz = fragment.at("lipschitz").as_double();
    if (!def.breaks.empty()) {
      def.lo = def.breaks.front();
      def.hi = def.breaks.back();
    }
    try {
      return make_piecewise(def);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[system]: ") + e.what());
    }
  }
  throw ConfigError("[system]: unknown type '" + type + "'");
}

bool AnalysisConfig::operator==(const AnalysisConfig& o) const {
  return system_fragment == o.system_fragment && depths == o.depths &&
         delta == o.delta && rigor_margin == o.rigor_margin &&
         analyses == o.analyses && seed == o.seed &&
         output_dir == o.output_dir && shadowing == o.shadowing &&
         cc == o.cc && coverage == o.coverage &&
         finite_oracle == o.finite_oracle;
}

AnalysisConfig parse_config(const std::string& text) {
  ConfigDocument doc = parse_config_document(text);
  AnalysisConfig cfg;

  static const std::set<std::string> known_analyses = {
      "components", "basins",    "coverage_study",
      "shadowing",  "cc_report", "finite_oracle"};

  if (doc.count("")) {
    const ConfigTable& top = doc.at("");
    reject_unknown(top, "top level",
                   {"depth", "depths", "delta", "rigor_margin", "analyses",
                    "seed", "output_dir"});
    if (top.count("depth") && top.count("depths"))
      throw ConfigError("top level: give either 'depth' or 'depths', not both");
    if (top.count("depth"))
      cfg.depths = {static_cast<int>(top.at("depth").as_int())};
    if (top.count("depths"))
      for (const auto& v : top.at("depths").as_array())
        cfg.depths.push_back(static_cast<int>(v.as_int()));
    if (top.count("delta")) cfg.delta = top.at("delta").as_double();
    if (top.count("rigor_margin"))
      cfg.rigor_margin = top.at("rigor_margin").as_double();
    if (top.count("seed"))
      cfg.seed = static_cast<std::uint64_t>(top.at("seed").as_int());
    if (top.count("output_dir")) cfg.output_dir = top.at("output_dir").as_string();
    if (top.count("analyses"))
      for (const auto& v : top.at("analyses").as_array())
        cfg.analyses.push_back(v.as_string());
  }

  for (const auto& [section, table] : doc) {
    if (section.empty() || section == "system") continue;
    if (section == "shadowing") {
      reject_unknown(table, "[shadowing]",
                     {"epsilon", "delta", "length", "trials", "search_depth"});
      if (table.count("epsilon"))
        cfg.shadowing.epsilon = table.at("epsilon").as_double();
      if (table.count("delta"))
        cfg.shadowing.delta = table.at("delta").as_double();
      if (table.count("length"))
        cfg.shadowing.length = static_cast<int>(table.at("length").as_int());
      if (table.count("trials"))
        cfg.shadowing.trials = static_cast<int>(table.at("trials").as_int());
      if (table.count("search_depth"))
        cfg.shadowing.search_depth =
            static_cast<int>(table.at("search_depth").as_int());
    } else if (section == "cc") {
      reject_unknown(table, "[cc]", {"ladder", "horizon"});
      if (table.count("ladder")) {
        cfg.cc.ladder.clear();
        for (const auto& pair : table.at("ladder").as_array()) {
          const auto& arr = pair.as_array();
          if (arr.size() != 2)
            throw ConfigError("[cc]: ladder entries must be [j, l] pairs");
          cfg.cc.ladder.emplace_back(static_cast<int>(arr[0].as_int()),
                                     static_cast<int>(arr[1].as_int()));
        }
      }
      if (table.count("horizon"))
        cfg.cc.horizon = static_cast<int>(table.at("horizon").as_int());
    } else if (section == "coverage") {
      reject_unknown(table, "[coverage]", {"j", "m", "horizon", "samples"});
      if (table.count("j"))
        cfg.coverage.w_j = static_cast<int>(table.at("j").as_int());
      if (table.count("m"))
        cfg.coverage.w_m = static_cast<int>(table.at("m").as_int());
      if (table.count("horizon"))
        cfg.coverage.w_horizon = static_cast<int>(table.at("horizon").as_int());
      if (table.count("samples"))
        cfg.coverage.samples = static_cast<int>(table.at("samples").as_int());
    } else if (section == "finite_oracle") {
      reject_unknown(table, "[finite_oracle]", {"n", "random_count", "random_n"});
      if (table.count("n"))
        cfg.finite_oracle.n = static_cast<int>(table.at("n").as_int());
      if (table.count("random_count"))
        cfg.finite_oracle.random_count =
            static_cast<int>(table.at("random_count").as_int());
      if (table.count("random_n"))
        cfg.finite_oracle.random_n =
            static_cast<int>(table.at("random_n").as_int());
    } else {
      throw ConfigError("unknown section [" + section + "]");
    }
  }

  if (cfg.analyses.empty())
    throw ConfigError("at least one analysis must be requested");
  for (const auto& a : cfg.analyses)
    if (!known_analyses.count(a))
      throw ConfigError("unknown analysis '" + a + "'");
  bool needs_system =
      std::any_of(cfg.analyses.begin(), cfg.analyses.end(),
                  [](const std::string& a) { return a != "finite_oracle"; });
  if (needs_system) {
    if (!doc.count("system"))
      throw ConfigError("missing [system] section");
    cfg.system_fragment = doc.at("system");
    parse_system(cfg.system_fragment);  // validate eagerly
    if (cfg.depths.empty())
      throw ConfigError("missing 'depth' (or 'depths') at top level");
  }
  for (std::size_t i = 0; i + 1 < cfg.depths.size(); ++i)
    if (cfg.depths[i] >= cfg.depths[i + 1])
      throw ConfigError("depths must be increasing");
  for (int d : cfg.depths)
    if (d < 0) throw ConfigError("depth must be >= 0");
  if (cfg.delta >= 0.0 && !std::isfinite(cfg.delta))
    throw ConfigError("delta must be finite");
  return cfg;
}

}  // namespace chainrec
