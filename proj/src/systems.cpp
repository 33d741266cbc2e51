#include "chainrec/systems.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace chainrec {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// max of |1 - beta*cos(2*pi*t)| over [lo, hi]; cos extremes occur at
// half-integer multiples of t.
double north_south_lip(double beta, double lo, double hi) {
  auto g = [&](double t) { return std::fabs(1.0 - beta * std::cos(kTwoPi * t)); };
  double m = std::max(g(lo), g(hi));
  for (double t = std::ceil(lo * 2.0) / 2.0; t <= hi; t += 0.5)
    m = std::max(m, g(t));
  return m;
}

// Exact hull of a 1D map over [lo, hi] given the raw (unwrapped) formula
// and the interior critical points, as an unwrapped interval.
Box hull_1d(const std::function<double(double)>& raw, double lo, double hi,
            const std::vector<double>& criticals) {
  double mn = std::min(raw(lo), raw(hi));
  double mx = std::max(raw(lo), raw(hi));
  for (double c : criticals)
    if (c > lo && c < hi) {
      mn = std::min(mn, raw(c));
      mx = std::max(mx, raw(c));
    }
  Box out;
  out.lo = {mn, 0.0};
  out.hi = {mx, 0.0};
  return out;
}

}  // namespace

SystemDef builtin(const std::string& name,
                  const std::map<std::string, double>& params) {
  SystemDef sys;
  sys.name = name;
  sys.params = params;
  if (name == "doubling") {
    sys.domain = Domain::circle();
    sys.eval = [d = sys.domain](Point p) {
      return d.canonicalize({2.0 * p[0], 0.0});
    };
    sys.lipschitz = [](const Box&) { return 2.0; };
    sys.range = [](const Box& b) {
      return hull_1d([](double x) { return 2.0 * x; }, b.lo[0], b.hi[0], {});
    };
  } else if (name == "rotation") {
    double alpha = get_param(params, "alpha", 0.25);
    sys.domain = Domain::circle();
    sys.eval = [alpha, d = sys.domain](Point p) {
      return d.canonicalize({p[0] + alpha, 0.0});
    };
    sys.lipschitz = [](const Box&) { return 1.0; };
    sys.range = [alpha](const Box& b) {
      return hull_1d([alpha](double x) { return x + alpha; }, b.lo[0],
                     b.hi[0], {});
    };
  } else if (name == "logistic") {
    double r = get_param(params, "r", 4.0);
    if (r < 0.0 || r > 4.0)
      throw std::invalid_argument("logistic: r must lie in [0,4]");
    sys.domain = Domain::interval(0.0, 1.0);
    sys.eval = [r, d = sys.domain](Point p) {
      return d.canonicalize({r * p[0] * (1.0 - p[0]), 0.0});
    };
    // |f'| = r|1-2x|, monotone away from x=1/2: max at a box endpoint.
    sys.lipschitz = [r](const Box& b) {
      return r * std::max(std::fabs(1.0 - 2.0 * b.lo[0]),
                          std::fabs(1.0 - 2.0 * b.hi[0]));
    };
    sys.range = [r](const Box& b) {
      return hull_1d([r](double x) { return r * x * (1.0 - x); }, b.lo[0],
                     b.hi[0], {0.5});
    };
  } else if (name == "tent") {
    double s = get_param(params, "s", 2.0);
    if (s <= 0.0 || s > 2.0)
      throw std::invalid_argument("tent: s must lie in (0,2]");
    sys.domain = Domain::interval(0.0, 1.0);
    sys.eval = [s, d = sys.domain](Point p) {
      return d.canonicalize({s * std::min(p[0], 1.0 - p[0]), 0.0});
    };
    sys.lipschitz = [s](const Box&) { return s; };
    sys.range = [s](const Box& b) {
      return hull_1d([s](double x) { return s * std::min(x, 1.0 - x); },
                     b.lo[0], b.hi[0], {0.5});
    };
  } else if (name == "north_south") {
    double beta = get_param(params, "beta", 1.0);
    if (beta <= 0.0 || beta > 2.0)
      throw std::invalid_argument("north_south: beta must lie in (0,2]");
    sys.domain = Domain::circle();
    // Attracting fixed point at 0, repelling at 1/2.
    sys.eval = [beta, d = sys.domain](Point p) {
      return d.canonicalize({p[0] - beta * std::sin(kTwoPi * p[0]) / kTwoPi, 0.0});
    };
    sys.lipschitz = [beta](const Box& b) {
      return north_south_lip(beta, b.lo[0], b.hi[0]);
    };
    // f' = 1 - beta*cos(2 pi x): interior extrema exist only for beta >= 1.
    std::vector<double> crits;
    if (beta >= 1.0) {
      double c = std::acos(1.0 / beta) / kTwoPi;
      crits = {c, 1.0 - c};
    }
    sys.range = [beta, crits](const Box& b) {
      return hull_1d(
          [beta](double x) { return x - beta * std::sin(kTwoPi * x) / kTwoPi; },
          b.lo[0], b.hi[0], crits);
    };
  } else if (name == "cat_map") {
    sys.domain = Domain::torus();
    sys.eval = [d = sys.domain](Point p) {
      return d.canonicalize({2.0 * p[0] + p[1], p[0] + p[1]});
    };
    // operator norm of [[2,1],[1,1]] = (3+sqrt(5))/2
    sys.lipschitz = [](const Box&) { return (3.0 + std::sqrt(5.0)) / 2.0; };
    // Linear with nonnegative entries: per-axis hulls are corner images.
    sys.range = [](const Box& b) {
      Box out;
      out.lo = {2.0 * b.lo[0] + b.lo[1], b.lo[0] + b.lo[1]};
      out.hi = {2.0 * b.hi[0] + b.hi[1], b.hi[0] + b.hi[1]};
      return out;
    };
  } else {
    throw std::invalid_argument("unknown builtin system: " + name);
  }
  return sys;
}

SystemDef make_piecewise(const PiecewiseDef& def) {
  if (def.breaks.size() < 2 || def.coeffs.size() + 1 != def.breaks.size())
    throw std::invalid_argument(
        "piecewise: need k+1 breakpoints for k coefficient lists");
  for (std::size_t i = 0; i + 1 < def.breaks.size(); ++i)
    if (!(def.breaks[i] < def.breaks[i + 1]))
      throw std::invalid_argument("piecewise: breakpoints must be increasing");
  if (def.lipschitz < 0.0)
    throw std::invalid_argument("piecewise: lipschitz constant must be >= 0");

  SystemDef sys;
  sys.name = "piecewise";
  sys.domain = Domain::interval(def.lo, def.hi);
  double L = def.lipschitz;
  sys.eval = [def, d = sys.domain](Point p) {
    double x = p[0];
    std::size_t piece = def.coeffs.size() - 1;
    for (std::size_t i = 0; i + 1 < def.breaks.size(); ++i)
      if (x < def.breaks[i + 1]) { piece = i; break; }
    double y = 0.0;
    const auto& c = def.coeffs[piece];
    for (auto it = c.rbegin(); it != c.rend(); ++it) y = y * x + *it;
    return d.canonicalize({y, 0.0});
  };
  sys.lipschitz = [L](const Box&) { return L; };

  // Endomorphism sample check: 1000 evenly spread points must stay in the
  // domain to within 1e-9 (canonicalize throws otherwise).
  double raw_lo = def.lo, raw_hi = def.hi;
  for (int i = 0; i < 1000; ++i) {
    double x = raw_lo + (raw_hi - raw_lo) * (i + 0.5) / 1000.0;
    try {
      sys.eval({x, 0.0});
    } catch (const std::domain_error&) {
      throw std::invalid_argument("piecewise: map leaves the domain");
    }
  }
  return sys;
}

}  // namespace chainrec
