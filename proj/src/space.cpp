#include "equicount/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eqc {

namespace {

bool finite_interval(const Interval& iv) {
  return std::isfinite(iv.lo) && std::isfinite(iv.hi);
}

/// Sorted pairwise-disjoint interval list; touching intervals are merged.
using IntervalList = std::vector<Interval>;

IntervalList merge_intervals(IntervalList xs) {
  std::erase_if(xs, [](const Interval& iv) { return !(iv.hi > iv.lo); });
  std::sort(xs.begin(), xs.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalList out;
  for (const Interval& iv : xs) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

IntervalList intersect_lists(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

IntervalList difference_lists(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  for (const Interval& iv : a) {
    double cursor = iv.lo;
    for (const Interval& cut : b) {
      if (cut.hi <= cursor) continue;
      if (cut.lo >= iv.hi) break;
      if (cut.lo > cursor) out.push_back({cursor, cut.lo});
      cursor = std::max(cursor, cut.hi);
      if (cursor >= iv.hi) break;
    }
    if (cursor < iv.hi) out.push_back({cursor, iv.hi});
  }
  return out;
}

IntervalList union_lists(IntervalList a, const IntervalList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return merge_intervals(std::move(a));
}

struct Slab {
  Interval x;
  IntervalList ys;
};

/// Decompose a box set into x-slabs with merged y stacks. Slab cuts are
/// exactly the box x-edges, so each box either spans a slab or misses it.
std::vector<Slab> sweep_slabs(const std::vector<Box>& boxes) {
  std::vector<double> cuts;
  cuts.reserve(boxes.size() * 2);
  for (const Box& b : boxes) {
    cuts.push_back(b.axes[0].lo);
    cuts.push_back(b.axes[0].hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Slab> slabs;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Interval sx{cuts[k], cuts[k + 1]};
    if (!(sx.hi > sx.lo)) continue;
    IntervalList ys;
    for (const Box& b : boxes) {
      if (b.axes[0].lo <= sx.lo && b.axes[0].hi >= sx.hi) ys.push_back(b.axes[1]);
    }
    ys = merge_intervals(std::move(ys));
    if (!ys.empty()) slabs.push_back({sx, std::move(ys)});
  }
  return slabs;
}

std::vector<Box> slabs_to_boxes(std::vector<Slab> slabs) {
  // Coalesce contiguous slabs with identical y stacks.
  std::vector<Slab> merged;
  for (Slab& s : slabs) {
    if (!merged.empty() && merged.back().x.hi == s.x.lo && merged.back().ys == s.ys) {
      merged.back().x.hi = s.x.hi;
    } else {
      merged.push_back(std::move(s));
    }
  }
  std::vector<Box> out;
  for (const Slab& s : merged) {
    for (const Interval& y : s.ys) {
      Box b;
      b.axes[0] = s.x;
      b.axes[1] = y;
      out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end(), [](const Box& a, const Box& b) {
    if (a.axes[0].lo != b.axes[0].lo) return a.axes[0].lo < b.axes[0].lo;
    if (a.axes[0].hi != b.axes[0].hi) return a.axes[0].hi < b.axes[0].hi;
    if (a.axes[1].lo != b.axes[1].lo) return a.axes[1].lo < b.axes[1].lo;
    return a.axes[1].hi < b.axes[1].hi;
  });
  return out;
}

std::vector<Box> boxes_from_intervals(const IntervalList& xs) {
  std::vector<Box> out;
  out.reserve(xs.size());
  for (const Interval& iv : xs) {
    Box b;
    b.axes[0] = iv;
    out.push_back(b);
  }
  return out;
}

IntervalList intervals_from_boxes(const std::vector<Box>& boxes) {
  IntervalList out;
  out.reserve(boxes.size());
  for (const Box& b : boxes) out.push_back(b.axes[0]);
  return merge_intervals(std::move(out));
}

enum class BoolOp { set_union, set_intersect, set_difference };

IntervalList apply_op(BoolOp op, const IntervalList& a, const IntervalList& b) {
  switch (op) {
    case BoolOp::set_union:
      return union_lists(a, b);
    case BoolOp::set_intersect:
      return intersect_lists(a, b);
    case BoolOp::set_difference:
      return difference_lists(a, b);
  }
  return {};
}

Region boolean_op(BoolOp op, const Region& a, const Region& b) {
  if (a.is_empty() && b.is_empty()) return Region{};
  const int dim = a.is_empty() ? b.dimension() : a.dimension();
  if (!a.is_empty() && !b.is_empty() && a.dimension() != b.dimension())
    throw std::invalid_argument("region dimension mismatch");

  if (dim == 1) {
    IntervalList xs = apply_op(op, intervals_from_boxes(a.boxes()), intervals_from_boxes(b.boxes()));
    return Region::canonical(1, boxes_from_intervals(xs));
  }

  // 2D: sweep over the union of both boxes' x-edges, combine y stacks per slab.
  std::vector<Box> all = a.boxes();
  all.insert(all.end(), b.boxes().begin(), b.boxes().end());
  std::vector<double> cuts;
  cuts.reserve(all.size() * 2);
  for (const Box& bx : all) {
    cuts.push_back(bx.axes[0].lo);
    cuts.push_back(bx.axes[0].hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Slab> slabs;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Interval sx{cuts[k], cuts[k + 1]};
    if (!(sx.hi > sx.lo)) continue;
    IntervalList ya, yb;
    for (const Box& bx : a.boxes())
      if (bx.axes[0].lo <= sx.lo && bx.axes[0].hi >= sx.hi) ya.push_back(bx.axes[1]);
    for (const Box& bx : b.boxes())
      if (bx.axes[0].lo <= sx.lo && bx.axes[0].hi >= sx.hi) yb.push_back(bx.axes[1]);
    IntervalList ys = apply_op(op, merge_intervals(std::move(ya)), merge_intervals(std::move(yb)));
    if (!ys.empty()) slabs.push_back({sx, std::move(ys)});
  }
  return Region::canonical(2, slabs_to_boxes(std::move(slabs)));
}

}  // namespace

double Box::measure(int dim) const {
  double m = 1.0;
  for (int a = 0; a < dim; ++a) m *= axes[static_cast<std::size_t>(a)].length();
  return m;
}

bool Box::contains(int dim, const Point& q) const {
  for (int a = 0; a < dim; ++a)
    if (!axes[static_cast<std::size_t>(a)].contains(q[static_cast<std::size_t>(a)])) return false;
  return true;
}

Box make_box(double lo, double hi) {
  Box b;
  b.axes[0] = {lo, hi};
  return b;
}

Box make_box(double xlo, double xhi, double ylo, double yhi) {
  Box b;
  b.axes[0] = {xlo, xhi};
  b.axes[1] = {ylo, yhi};
  return b;
}

ParameterSpace::ParameterSpace(std::vector<Interval> bounds, std::vector<int> resolution)
    : dim_(static_cast<int>(bounds.size())), bounds_(std::move(bounds)), res_(std::move(resolution)) {
  if (dim_ < 1 || dim_ > 2) throw std::invalid_argument("dimension must be 1 or 2");
  if (res_.size() != bounds_.size()) throw std::invalid_argument("resolution/bounds size mismatch");
  for (int a = 0; a < dim_; ++a) {
    const Interval& iv = bounds_[static_cast<std::size_t>(a)];
    if (!finite_interval(iv) || !(iv.lo < iv.hi))
      throw std::invalid_argument("axis bounds must be finite with lo < hi");
    if (res_[static_cast<std::size_t>(a)] < 1)
      throw std::invalid_argument("axis resolution must be positive");
  }
}

ParameterSpace ParameterSpace::line(double lo, double hi, int boxes) {
  return ParameterSpace({{lo, hi}}, {boxes});
}

ParameterSpace ParameterSpace::plane(Interval x, Interval y, int nx, int ny) {
  return ParameterSpace({x, y}, {nx, ny});
}

std::size_t ParameterSpace::box_count() const {
  std::size_t n = 1;
  for (int a = 0; a < dim_; ++a) n *= static_cast<std::size_t>(res_[static_cast<std::size_t>(a)]);
  return n;
}

double ParameterSpace::measure() const {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) m *= bounds_[static_cast<std::size_t>(a)].length();
  return m;
}

Box ParameterSpace::domain_box() const {
  Box b;
  for (int a = 0; a < dim_; ++a) b.axes[static_cast<std::size_t>(a)] = bounds_[static_cast<std::size_t>(a)];
  return b;
}

double ParameterSpace::edge(int axis, int k) const {
  const Interval& iv = bound(axis);
  const int n = resolution(axis);
  if (k <= 0) return iv.lo;
  if (k >= n) return iv.hi;
  return iv.lo + iv.length() * (static_cast<double>(k) / static_cast<double>(n));
}

int ParameterSpace::box_index(int axis, double v) const {
  const Interval& iv = bound(axis);
  const int n = resolution(axis);
  const double t = (v - iv.lo) / iv.length();
  int k = static_cast<int>(std::floor(t * static_cast<double>(n)));
  return std::clamp(k, 0, n - 1);
}

std::size_t ParameterSpace::flat_index(int ix, int iy) const {
  if (dim_ == 1) return static_cast<std::size_t>(ix);
  return static_cast<std::size_t>(iy) * static_cast<std::size_t>(res_[0]) + static_cast<std::size_t>(ix);
}

Region Region::empty(int dim) {
  Region r;
  r.dim_ = dim;
  return r;
}

Region Region::canonical(int dim, std::vector<Box> boxes) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("region dimension must be 1 or 2");
  Region r;
  r.dim_ = dim;
  std::erase_if(boxes, [dim](const Box& b) { return !(b.measure(dim) > 0.0); });
  if (boxes.empty()) return r;
  if (dim == 1) {
    IntervalList xs;
    xs.reserve(boxes.size());
    for (const Box& b : boxes) xs.push_back(b.axes[0]);
    r.boxes_ = boxes_from_intervals(merge_intervals(std::move(xs)));
  } else {
    r.boxes_ = slabs_to_boxes(sweep_slabs(boxes));
  }
  return r;
}

bool Region::contains(const Point& q) const {
  for (const Box& b : boxes_)
    if (b.contains(dim_, q)) return true;
  return false;
}

Region make_region(const ParameterSpace& space, std::vector<Box> boxes) {
  const Box dom = space.domain_box();
  for (const Box& b : boxes) {
    for (int a = 0; a < space.dimension(); ++a) {
      const auto ax = static_cast<std::size_t>(a);
      if (b.axes[ax].lo < dom.axes[ax].lo || b.axes[ax].hi > dom.axes[ax].hi)
        throw std::invalid_argument("region box outside parameter space bounds");
    }
  }
  return Region::canonical(space.dimension(), std::move(boxes));
}

double lambda_measure(const Region& r) {
  long double total = 0.0L;
  for (const Box& b : r.boxes()) total += static_cast<long double>(b.measure(r.dimension()));
  return static_cast<double>(total);
}

Region region_union(const Region& a, const Region& b) { return boolean_op(BoolOp::set_union, a, b); }

Region region_intersect(const Region& a, const Region& b) {
  if (a.is_empty() || b.is_empty()) return Region::empty(std::max(a.dimension(), b.dimension()));
  return boolean_op(BoolOp::set_intersect, a, b);
}

Region region_difference(const Region& a, const Region& b) {
  if (a.is_empty()) return a;
  if (b.is_empty()) return a;
  return boolean_op(BoolOp::set_difference, a, b);
}

double symmetric_difference_measure(const Region& a, const Region& b) {
  return lambda_measure(region_difference(a, b)) + lambda_measure(region_difference(b, a));
}

std::string to_string(const Box& b, int dim) {
  std::ostringstream os;
  os << "[" << b.axes[0].lo << "," << b.axes[0].hi << "]";
  if (dim == 2) os << "x[" << b.axes[1].lo << "," << b.axes[1].hi << "]";
  return os.str();
}

}  // namespace eqc
