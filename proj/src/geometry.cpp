#include "chainrec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainrec {

Domain Domain::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("interval bounds must be finite and nonempty");
  Domain d;
  d.kind = DomainKind::interval;
  d.lo = {a, 0.0};
  d.hi = {b, 1.0};
  return d;
}

Domain Domain::square(double ax, double bx, double ay, double by) {
  if (!(ax < bx) || !(ay < by))
    throw std::invalid_argument("square bounds must be nonempty");
  Domain d;
  d.kind = DomainKind::square;
  d.lo = {ax, ay};
  d.hi = {bx, by};
  return d;
}

Domain Domain::circle() {
  Domain d;
  d.kind = DomainKind::circle;
  d.lo = {0.0, 0.0};
  d.hi = {1.0, 1.0};
  return d;
}

Domain Domain::torus() {
  Domain d;
  d.kind = DomainKind::torus;
  d.lo = {0.0, 0.0};
  d.hi = {1.0, 1.0};
  return d;
}

double Domain::diameter() const {
  double s = 0.0;
  for (int a = 0; a < dim(); ++a) {
    double w = periodic() ? 0.5 : span(a);
    s += w * w;
  }
  return std::sqrt(s);
}

static double wrap01(double x) {
  double y = x - std::floor(x);
  return (y >= 1.0) ? 0.0 : y;  // guard against floor rounding
}

Point Domain::canonicalize(Point p) const {
  if (periodic()) {
    for (int a = 0; a < dim(); ++a) p[a] = wrap01(p[a]);
    return p;
  }
  for (int a = 0; a < dim(); ++a) {
    if (p[a] < lo[a] - 1e-9 || p[a] > hi[a] + 1e-9)
      throw std::domain_error("point outside non-periodic domain");
    p[a] = std::clamp(p[a], lo[a], hi[a]);
  }
  return p;
}

bool Domain::contains(Point p, double tol) const {
  if (periodic()) return true;
  for (int a = 0; a < dim(); ++a)
    if (p[a] < lo[a] - tol || p[a] > hi[a] + tol) return false;
  return true;
}

static double axis_dist(double x, double y, bool periodic) {
  double d = std::fabs(x - y);
  if (periodic) {
    d = std::fmod(d, 1.0);
    d = std::min(d, 1.0 - d);
  }
  return d;
}

double metric_distance(Point p, Point q, const Domain& d) {
  double s = 0.0;
  for (int a = 0; a < d.dim(); ++a) {
    double da = axis_dist(p[a], q[a], d.periodic());
    s += da * da;
  }
  return std::sqrt(s);
}

Grid subdivide(const Domain& domain, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  if (depth * domain.dim() > 24)
    throw std::length_error("grid would exceed 2^24 boxes");
  Grid g;
  g.domain = domain;
  g.depth = depth;
  g.cells = std::uint32_t{1} << depth;
  g.count = std::uint64_t{1} << (depth * domain.dim());
  return g;
}

Point Grid::center(BoxId b) const {
  Point c{0.0, 0.0};
  std::uint32_t ix = b % cells;
  std::uint32_t iy = b / cells;
  c[0] = domain.lo[0] + (ix + 0.5) * width(0);
  if (domain.dim() == 2) c[1] = domain.lo[1] + (iy + 0.5) * width(1);
  return c;
}

Box Grid::bounds(BoxId b) const {
  Box box;
  std::uint32_t ix = b % cells;
  std::uint32_t iy = b / cells;
  box.lo[0] = domain.lo[0] + ix * width(0);
  box.hi[0] = box.lo[0] + width(0);
  if (domain.dim() == 2) {
    box.lo[1] = domain.lo[1] + iy * width(1);
    box.hi[1] = box.lo[1] + width(1);
  }
  return box;
}

double Grid::box_diameter() const {
  double s = 0.0;
  for (int a = 0; a < domain.dim(); ++a) s += width(a) * width(a);
  return std::sqrt(s);
}

BoxId box_of(Point p, const Grid& grid) {
  p = grid.domain.canonicalize(p);
  std::uint32_t idx[2] = {0, 0};
  for (int a = 0; a < grid.domain.dim(); ++a) {
    double t = (p[a] - grid.domain.lo[a]) / grid.width(a);
    auto i = static_cast<std::int64_t>(std::floor(t));
    // right endpoint folds into the last box
    if (i >= grid.cells) i = grid.cells - 1;
    if (i < 0) i = 0;
    idx[a] = static_cast<std::uint32_t>(i);
  }
  return idx[0] + idx[1] * grid.cells;
}

static double axis_point_interval_dist(double x, double lo, double hi,
                                       bool periodic) {
  if (!periodic) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
  }
  double best = 0.0;
  bool inside = false;
  double gap = 1e300;
  for (int k = -1; k <= 1; ++k) {
    double y = x + k;
    if (y >= lo && y <= hi) inside = true;
    gap = std::min(gap, std::min(std::fabs(y - lo), std::fabs(y - hi)));
  }
  best = inside ? 0.0 : gap;
  return best;
}

double point_box_distance(Point p, const Box& box, const Domain& d) {
  double s = 0.0;
  for (int a = 0; a < d.dim(); ++a) {
    double da =
        axis_point_interval_dist(p[a], box.lo[a], box.hi[a], d.periodic());
    s += da * da;
  }
  return std::sqrt(s);
}

BoxSet neighborhood_boxes(const BoxSet& s, double r, const Grid& grid) {
  if (r < 0) throw std::invalid_argument("neighborhood radius must be >= 0");
  if (s.empty()) return {};
  const double threshold = r + grid.box_diameter() / 2.0;
  BoxSet out;
  for (BoxId cand = 0; cand < grid.count; ++cand) {
    Point c = grid.center(cand);
    for (BoxId src : s) {
      if (point_box_distance(c, grid.bounds(src), grid.domain) <= threshold) {
        out.push_back(cand);
        break;
      }
    }
  }
  return out;
}

bool boxset_contains(const BoxSet& s, BoxId b) {
  return std::binary_search(s.begin(), s.end(), b);
}

BoxSet boxset_union(const BoxSet& a, const BoxSet& b) {
  BoxSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

bool boxset_subset(const BoxSet& a, const BoxSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace chainrec
