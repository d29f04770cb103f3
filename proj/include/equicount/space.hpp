#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace eqc {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool operator==(const Interval&) const = default;
};

/// Axis-aligned box. Axis slots beyond the space dimension are unused and
/// stay value-initialized so boxes of equal geometry compare equal.
struct Box {
  std::array<Interval, 2> axes{};

  Interval& axis(int a) { return axes[static_cast<std::size_t>(a)]; }
  const Interval& axis(int a) const { return axes[static_cast<std::size_t>(a)]; }

  double measure(int dim) const;
  bool contains(int dim, const std::array<double, 2>& q) const;
  bool operator==(const Box&) const = default;
};

Box make_box(double lo, double hi);
Box make_box(double xlo, double xhi, double ylo, double yhi);

/// Point in parameter space; the second coordinate is ignored in 1D.
using Point = std::array<double, 2>;

/// Bounded parameter space M with a uniform sampling grid per axis.
/// The grid carries the piecewise-constant field values; regions and
/// partition cells are free to have arbitrary real corners.
class ParameterSpace {
 public:
  ParameterSpace(std::vector<Interval> bounds, std::vector<int> resolution);

  static ParameterSpace line(double lo, double hi, int boxes);
  static ParameterSpace plane(Interval x, Interval y, int nx, int ny);

  int dimension() const { return dim_; }
  const Interval& bound(int axis) const { return bounds_[static_cast<std::size_t>(axis)]; }
  int resolution(int axis) const { return res_[static_cast<std::size_t>(axis)]; }
  std::size_t box_count() const;

  /// λ(M): total length (1D) or area (2D).
  double measure() const;

  Box domain_box() const;

  /// Grid line k on an axis, k in [0, resolution(axis)].
  double edge(int axis, int k) const;

  /// Index of the grid box containing coordinate v on an axis (clamped).
  int box_index(int axis, double v) const;

  /// Flat sample index; x varies fastest (row-major with rows along y).
  std::size_t flat_index(int ix, int iy) const;

  bool operator==(const ParameterSpace&) const = default;

 private:
  int dim_;
  std::vector<Interval> bounds_;
  std::vector<int> res_;
};

/// Finite union of axis-aligned boxes in canonical form: pairwise
/// λ-disjoint fragments, produced by an x-sweep into slabs with merged
/// y-interval stacks, adjacent slabs with identical stacks coalesced.
/// Canonicalization is idempotent and deterministic.
class Region {
 public:
  Region() = default;

  static Region empty(int dim);
  static Region canonical(int dim, std::vector<Box> boxes);

  int dimension() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool is_empty() const { return boxes_.empty(); }
  bool contains(const Point& q) const;

  bool operator==(const Region&) const = default;

 private:
  int dim_ = 0;
  std::vector<Box> boxes_;
};

/// Bounds-checked region constructor: every box must lie within M.
Region make_region(const ParameterSpace& space, std::vector<Box> boxes);

/// λ(r): total measure of a canonical region. Empty region gives 0.
double lambda_measure(const Region& r);

Region region_union(const Region& a, const Region& b);
Region region_intersect(const Region& a, const Region& b);
Region region_difference(const Region& a, const Region& b);

/// λ(a Δ b); 0 iff the regions agree up to λ-null sets.
double symmetric_difference_measure(const Region& a, const Region& b);

/// One connected partition element: a single box of positive measure.
struct Cell {
  Box box;
};

std::string to_string(const Box& b, int dim);

}  // namespace eqc
