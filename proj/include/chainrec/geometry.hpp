#pragma once

#include <array>
#include <cstdint>
#include <vector>

// Compact domains (interval, square, circle, torus) and their dyadic box
// grids. Boxes are half-open; the right/top boundary folds into the last
// box so that the boxes partition the domain exactly.

namespace chainrec {

using BoxId = std::uint32_t;
using BoxSet = std::vector<BoxId>;  // sorted, unique

// Points are stored in a fixed-size array; only the first dim() entries
// are meaningful.
using Point = std::array<double, 2>;

enum class DomainKind { interval, square, circle, torus };

struct Domain {
  DomainKind kind = DomainKind::interval;
  // Per-axis closed ranges. Circle/torus are fixed to [0,1) per axis.
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};

  static Domain interval(double a = 0.0, double b = 1.0);
  static Domain square(double ax = 0.0, double bx = 1.0, double ay = 0.0,
                       double by = 1.0);
  static Domain circle();
  static Domain torus();

  int dim() const {
    return (kind == DomainKind::square || kind == DomainKind::torus) ? 2 : 1;
  }
  bool periodic() const {
    return kind == DomainKind::circle || kind == DomainKind::torus;
  }
  double span(int axis) const { return hi[axis] - lo[axis]; }
  double diameter() const;

  // Wraps periodic coordinates into [0,1); throws std::domain_error when a
  // point lies outside a non-periodic domain (beyond a small tolerance).
  Point canonicalize(Point p) const;
  bool contains(Point p, double tol = 1e-9) const;
};

// Euclidean metric, with per-axis wraparound min(|d|, 1-|d|) on
// circle/torus axes.
double metric_distance(Point p, Point q, const Domain& d);

// Closed axis-aligned box, lo/hi per axis.
struct Box {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
};

struct Grid {
  Domain domain;
  int depth = 0;           // dyadic subdivision depth k
  std::uint32_t cells = 1; // 2^k cells per axis
  std::uint64_t count = 1; // cells^dim

  Point center(BoxId b) const;
  Box bounds(BoxId b) const;
  double width(int axis) const { return domain.span(axis) / cells; }
  // Diagonal of one box: 2^(-k) * span * sqrt(dim) for equal spans.
  double box_diameter() const;
};

// Subdivides the domain into 2^(depth*dim) congruent boxes.
// Throws std::length_error when depth*dim > 24.
Grid subdivide(const Domain& domain, int depth);

// Half-open membership; the domain's right endpoint maps to the last box.
BoxId box_of(Point p, const Grid& grid);

// Distance from a point to a closed box, wrapped on periodic axes.
double point_box_distance(Point p, const Box& box, const Domain& d);

// All boxes whose center lies within r + box_diameter/2 of some box of s.
// Conservative superset of the open r-neighborhood of the union of s.
BoxSet neighborhood_boxes(const BoxSet& s, double r, const Grid& grid);

// Sorted-set helpers.
bool boxset_contains(const BoxSet& s, BoxId b);
BoxSet boxset_union(const BoxSet& a, const BoxSet& b);
bool boxset_subset(const BoxSet& a, const BoxSet& b);

}  // namespace chainrec
