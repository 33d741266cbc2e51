#pragma once

#include <functional>
#include <map>
#include <string>

#include "chainrec/geometry.hpp"

// Catalog of continuous self-maps f: X -> X with per-box Lipschitz bounds.

namespace chainrec {

struct SystemDef {
  std::string name;
  Domain domain;
  std::map<std::string, double> params;
  // Total on the domain; the result is already canonicalized.
  std::function<Point(Point)> eval;
  // Valid Lipschitz bound for f restricted to the given (closed) box.
  std::function<double(const Box&)> lipschitz;
  // Exact per-axis hull of f(box), unwrapped (may extend past periodic
  // bounds); set for builtins where the closed-form extrema are known.
  // When absent, enclosures fall back to corner images + Lipschitz padding.
  std::function<Box(const Box&)> range;

  bool warning_endomorphism = false;  // set by parse_system for user maps
};

// name in {doubling, rotation, logistic, tent, north_south, cat_map}.
// Throws std::invalid_argument on unknown names / out-of-range parameters.
SystemDef builtin(const std::string& name,
                  const std::map<std::string, double>& params = {});

inline Point evaluate(const SystemDef& sys, Point p) {
  return sys.eval(sys.domain.canonicalize(p));
}

// 1D piecewise polynomial map: pieces between consecutive breakpoints,
// ascending-power coefficients per piece, user-declared Lipschitz constant.
struct PiecewiseDef {
  std::vector<double> breaks;               // ascending, spans the domain
  std::vector<std::vector<double>> coeffs;  // one list per piece
  double lipschitz = 0.0;
  double lo = 0.0, hi = 1.0;
};

SystemDef make_piecewise(const PiecewiseDef& def);

}  // namespace chainrec
